// Command-line surface for the lamespec library: spectra, densities,
// empirical-vs-limit comparisons, verification reports, and complex-root
// scatters, emitted as CSV/JSON for plotting and CI.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lamespec/lamespec.hpp"

namespace {

using nlohmann::json;

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot open output file: " + path);
  out << text;
}

std::vector<double> parse_reals(const std::string& csv, std::size_t expect,
                                const char* what) {
  std::vector<double> vals;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t pos = 0;
    double v = std::stod(tok, &pos);
    if (pos != tok.size()) {
      throw std::invalid_argument(std::string(what) + ": bad number '" + tok +
                                  "'");
    }
    vals.push_back(v);
  }
  if (vals.size() != expect) {
    throw std::invalid_argument(std::string(what) + ": expected " +
                                std::to_string(expect) + " comma-separated values");
  }
  return vals;
}

// "a+bi" / "a-bi" / "a" / "bi", no spaces; exponents like 1e-3 are handled.
std::complex<double> parse_complex(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty complex literal");
  auto to_double = [](const std::string& t) {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    std::size_t pos = 0;
    double v = std::stod(t, &pos);
    if (pos != t.size()) {
      throw std::invalid_argument("bad complex literal component '" + t + "'");
    }
    return v;
  };
  if (s.back() != 'i') {
    return {to_double(s), 0.0};
  }
  const std::string body = s.substr(0, s.size() - 1);
  // split at the last sign that is not leading and not an exponent sign
  for (std::size_t k = body.size(); k-- > 1;) {
    const char ch = body[k];
    if ((ch == '+' || ch == '-') &&
        body[k - 1] != 'e' && body[k - 1] != 'E') {
      return {to_double(body.substr(0, k)), to_double(body.substr(k))};
    }
  }
  return {0.0, to_double(body)};
}

std::vector<std::complex<double>> parse_complex_triple(const std::string& csv) {
  std::vector<std::complex<double>> vals;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) vals.push_back(parse_complex(tok));
  if (vals.size() != 3) {
    throw std::invalid_argument("--roots: expected three complex values");
  }
  return vals;
}

lamespec::Formula parse_formula(const std::string& tag) {
  using lamespec::Formula;
  if (tag == "i") return Formula::I;
  if (tag == "ii") return Formula::II;
  if (tag == "iii") return Formula::III;
  if (tag == "iv-closed") return Formula::IVClosed;
  if (tag == "iv-integral") return Formula::IVIntegral;
  throw std::invalid_argument(
      "--formula must be one of i, ii, iii, iv-closed, iv-integral");
}

// ---------------------------------------------------------------------------

struct SpectrumArgs {
  std::string roots, alpha = "0.5,0.5,0.5", out;
  int m = 1;
};

int cmd_spectrum(const SpectrumArgs& a) {
  const auto r = parse_reals(a.roots, 3, "--roots");
  const auto al = parse_reals(a.alpha, 3, "--alpha");
  const lamespec::Cubic c = lamespec::make_cubic(r[0], r[1], r[2]);
  const auto exps = lamespec::make_exponents(al[0], al[1], al[2]);
  const auto spec =
      lamespec::build_tridiag(c, lamespec::linear_coefficient(c, exps), a.m);
  const auto eig = lamespec::eigenvalues(spec);

  std::string text = "# index,t\n";
  for (std::size_t j = 0; j < eig.size(); ++j) {
    text += std::to_string(j) + "," + fmt17(eig[j] + c.e2) + "\n";
  }
  emit(text, a.out);
  return 0;
}

struct DensityArgs {
  std::string roots, formula = "iii", out;
  int grid = 1000;
  double exclude = 1e-6;
};

int cmd_density(const DensityArgs& a) {
  const auto r = parse_reals(a.roots, 3, "--roots");
  if (a.grid < 1) throw std::invalid_argument("--grid must be >= 1");
  const lamespec::Cubic c = lamespec::make_cubic(r[0], r[1], r[2]);
  const lamespec::Formula f = parse_formula(a.formula);
  lamespec::DensityModel dm{c};
  const double span = c.span();
  const double zone = a.exclude * span;

  std::string text = "# s,rho formula=" + a.formula + "\n";
  for (int k = 0; k < a.grid; ++k) {
    const double s = c.e3 + (k + 0.5) / a.grid * span;
    if (std::abs(s - c.e2) < zone) continue;
    text += fmt17(s) + "," + fmt17(lamespec::rho(dm, s, f)) + "\n";
  }
  emit(text, a.out);
  return 0;
}

struct CompareArgs {
  std::string roots, kappa, hist_out, density_out, report_out;
  int n = 100, bins = 60, grid = 200;
};

int cmd_compare(const CompareArgs& a) {
  const auto r = parse_reals(a.roots, 3, "--roots");
  if (a.n < 1) throw std::invalid_argument("--n must be >= 1");
  if (a.bins < 1 || a.grid < 1) {
    throw std::invalid_argument("--bins and --grid must be >= 1");
  }
  const lamespec::Cubic c = lamespec::make_cubic(r[0], r[1], r[2]);
  lamespec::DensityModel dm{c};

  std::vector<double> roots_t;
  if (a.kappa.empty()) {
    for (const auto& fs : lamespec::union_spectrum(c, a.n)) {
      roots_t.insert(roots_t.end(), fs.roots_t.begin(), fs.roots_t.end());
    }
  } else {
    const auto kv = parse_reals(a.kappa, 3, "--kappa");
    const auto fs = lamespec::family_spectrum(
        c, a.n, lamespec::make_kappa(kv[0], kv[1], kv[2]));
    roots_t = fs.roots_t;
  }
  const auto em = lamespec::empirical(roots_t);
  const double ks = lamespec::ks_distance(em, dm);

  const auto hist = lamespec::histogram(em, a.bins, c.e3, c.e1);
  double max_bin_error = 0.0;
  std::string hist_text = "# bin_left,bin_right,count,height\n";
  for (const auto& b : hist) {
    hist_text += fmt17(b.lo) + "," + fmt17(b.hi) + "," +
                 std::to_string(b.count) + "," + fmt17(b.height) + "\n";
    const double mass = lamespec::cdf(dm, b.hi) - lamespec::cdf(dm, b.lo);
    max_bin_error =
        std::max(max_bin_error, std::abs(b.height - mass / (b.hi - b.lo)));
  }
  if (!a.hist_out.empty()) emit(hist_text, a.hist_out);

  if (!a.density_out.empty()) {
    std::string dens_text = "# s,rho formula=iii\n";
    for (int k = 0; k < a.grid; ++k) {
      const double s = c.e3 + (k + 0.5) / a.grid * c.span();
      if (std::abs(s - c.e2) < 1e-6 * c.span()) continue;
      dens_text +=
          fmt17(s) + "," + fmt17(lamespec::rho(dm, s, lamespec::Formula::III)) +
          "\n";
    }
    emit(dens_text, a.density_out);
  }

  json report;
  report["config"] = {{"roots", a.roots},
                      {"kappa", a.kappa.empty() ? "union" : a.kappa},
                      {"n", a.n},
                      {"bins", a.bins},
                      {"grid", a.grid}};
  report["n"] = a.n;
  report["atoms"] = em.count();
  report["ks"] = ks;
  report["bins"] = a.bins;
  report["max_bin_error"] = max_bin_error;
  emit(report.dump(2) + "\n", a.report_out);
  return 0;
}

struct VerifyArgs {
  std::string roots, out;
  double heun_tol = 1e-5, equiv_tol = 1e-8, norm_tol = 1e-6,
         indicial_tol = 1e-10, resid_tol = 1e-8;
  int nmax = 12;
};

int cmd_verify(const VerifyArgs& a) {
  const auto r = parse_reals(a.roots, 3, "--roots");
  const lamespec::Cubic c = lamespec::make_cubic(r[0], r[1], r[2]);
  lamespec::DensityModel dm{c};
  const double span = c.span();
  json report;
  report["config"] = {{"roots", a.roots}, {"nmax", a.nmax}};
  bool all_pass = true;
  auto add = [&](json j, bool pass) {
    j["pass"] = pass;
    report["checks"].push_back(std::move(j));
    all_pass = all_pass && pass;
  };

  {  // Heun residual sweep at fixed-seed random interior points
    std::mt19937 rng(20240811u);
    std::uniform_real_distribution<double> u(c.e3, c.e1);
    double worst = 0.0;
    int taken = 0;
    while (taken < 50) {
      const double s = u(rng);
      const double dist = std::min(
          {std::abs(s - c.e1), std::abs(s - c.e2), std::abs(s - c.e3)});
      if (dist <= 0.03 * span) continue;
      worst = std::max(worst, lamespec::heun_residual(dm, s).relative());
      ++taken;
    }
    add({{"name", "heun_residual"},
         {"points", 50},
         {"max_relative", worst},
         {"tol", a.heun_tol}},
        worst <= a.heun_tol);
  }

  {  // five-formula equivalence on an interior grid
    const lamespec::Formula forms[] = {
        lamespec::Formula::I, lamespec::Formula::II, lamespec::Formula::III,
        lamespec::Formula::IVClosed, lamespec::Formula::IVIntegral};
    double worst = 0.0;
    for (int k = 0; k < 200; ++k) {
      const double s = c.e3 + (k + 0.5) / 200.0 * span;
      if (std::abs(s - c.e1) < 0.01 * span ||
          std::abs(s - c.e2) < 0.01 * span ||
          std::abs(s - c.e3) < 0.01 * span) {
        continue;
      }
      double lo = 0.0, hi = 0.0;
      bool first = true;
      for (auto f : forms) {
        const double v = lamespec::rho(dm, s, f);
        lo = first ? v : std::min(lo, v);
        hi = first ? v : std::max(hi, v);
        first = false;
      }
      worst = std::max(worst, (hi - lo) / hi);
    }
    add({{"name", "formula_equivalence"},
         {"max_relative_deviation", worst},
         {"tol", a.equiv_tol}},
        worst <= a.equiv_tol);
  }

  {  // normalization
    const double total = lamespec::cdf(dm, c.e1);
    add({{"name", "normalization"},
         {"integral", total},
         {"tol", a.norm_tol}},
        std::abs(total - 1.0) <= a.norm_tol);
  }

  {  // indicial exponents: (0,0) at each finite root, (1/2, 3/2) at infinity
    using SP = lamespec::SingularPoint;
    bool pass = true;
    json pts = json::array();
    for (auto [tag, point, x1, x2] :
         {std::tuple{"e1", SP::E1, 0.0, 0.0}, std::tuple{"e2", SP::E2, 0.0, 0.0},
          std::tuple{"e3", SP::E3, 0.0, 0.0},
          std::tuple{"infinity", SP::Infinity, 0.5, 1.5}}) {
      const auto [lo, hi] = lamespec::indicial_exponents(c, point);
      const bool ok = std::abs(lo - x1) <= a.indicial_tol &&
                      std::abs(hi - x2) <= a.indicial_tol;
      pts.push_back({{"point", tag}, {"exponents", {lo, hi}}, {"ok", ok}});
      pass = pass && ok;
    }
    add({{"name", "indicial"}, {"points", pts}, {"tol", a.indicial_tol}}, pass);
  }

  {  // ODE residuals of every reconstructed solution up to nmax
    double worst = 0.0;
    for (int n = 1; n <= a.nmax; ++n) {
      for (const auto& fs : lamespec::union_spectrum(c, n)) {
        for (std::size_t j = 0; j < fs.roots_t.size(); ++j) {
          worst = std::max(
              worst, lamespec::verify_lame_residual(c, n, fs.kappa, j));
        }
      }
    }
    add({{"name", "family_residuals"},
         {"n_max", a.nmax},
         {"max_relative", worst},
         {"tol", a.resid_tol}},
        worst <= a.resid_tol);
  }

  report["pass"] = all_pass;
  emit(report.dump(2) + "\n", a.out);
  return all_pass ? 0 : 1;
}

struct ComplexArgs {
  std::string roots, alpha = "0.5,0.5,0.5", out;
  int n = 50;
};

int cmd_complex(const ComplexArgs& a) {
  const auto rr = parse_complex_triple(a.roots);
  const auto al = parse_reals(a.alpha, 3, "--alpha");
  if (a.n < 1) throw std::invalid_argument("--n must be >= 1");
  const auto c = lamespec::make_complex_cubic(rr[0], rr[1], rr[2]);
  const auto sc = lamespec::scatter(
      c, a.n, lamespec::make_exponents(al[0], al[1], al[2]));

  std::string text = "# re,im thickness=" + fmt17(sc.thickness) +
                     " min_pair_distance=" + fmt17(sc.min_pair_distance) + "\n";
  for (const auto& z : sc.points) {
    text += fmt17(z.real()) + "," + fmt17(z.imag()) + "\n";
  }
  emit(text, a.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral polynomials of the Lame operator: spectra, limiting "
               "densities, and verification"};
  app.require_subcommand(1);
  int threads = 1;
  app.add_option("--threads", threads,
                 "reserved; all commands currently run single-threaded");

  SpectrumArgs sa;
  auto* sp = app.add_subcommand("spectrum",
                                "Van Vleck roots of the degree-m pencil (CSV)");
  sp->add_option("--roots", sa.roots, "cubic roots e1,e2,e3")->required();
  sp->add_option("--alpha", sa.alpha, "exponents a1,a2,a3 (default 1/2 each)");
  sp->add_option("--m", sa.m, "polynomial degree m >= 1")->required();
  sp->add_option("--out", sa.out, "output file (default stdout)");

  DensityArgs da;
  auto* dn = app.add_subcommand("density", "limiting density on a grid (CSV)");
  dn->add_option("--roots", da.roots, "cubic roots e1,e2,e3")->required();
  dn->add_option("--grid", da.grid, "number of grid points");
  dn->add_option("--formula", da.formula,
                 "i | ii | iii | iv-closed | iv-integral");
  dn->add_option("--exclude", da.exclude,
                 "excluded e2-neighborhood, relative to e1-e3");
  dn->add_option("--out", da.out, "output file (default stdout)");

  CompareArgs ca;
  auto* cp = app.add_subcommand(
      "compare", "empirical spectrum vs limiting measure (CSV + JSON)");
  cp->add_option("--roots", ca.roots, "cubic roots e1,e2,e3")->required();
  cp->add_option("--n", ca.n, "elliptic degree n")->required();
  cp->add_option("--kappa", ca.kappa,
                 "single family k1,k2,k3 (default: union of all families)");
  cp->add_option("--bins", ca.bins, "histogram bin count");
  cp->add_option("--grid", ca.grid, "density grid size");
  cp->add_option("--hist-out", ca.hist_out, "histogram CSV file");
  cp->add_option("--density-out", ca.density_out, "density CSV file");
  cp->add_option("--report-out", ca.report_out,
                 "JSON report file (default stdout)");

  VerifyArgs va;
  auto* vf = app.add_subcommand("verify",
                                "identity/residual verification report (JSON)");
  vf->add_option("--roots", va.roots, "cubic roots e1,e2,e3")->required();
  vf->add_option("--heun-tol", va.heun_tol, "ODE residual tolerance");
  vf->add_option("--equiv-tol", va.equiv_tol, "formula equivalence tolerance");
  vf->add_option("--norm-tol", va.norm_tol, "normalization tolerance");
  vf->add_option("--indicial-tol", va.indicial_tol, "indicial tolerance");
  vf->add_option("--resid-tol", va.resid_tol, "family residual tolerance");
  vf->add_option("--nmax", va.nmax, "largest elliptic degree checked");
  vf->add_option("--out", va.out, "output file (default stdout)");

  ComplexArgs xa;
  auto* cx = app.add_subcommand("complex",
                                "complex-cubic root scatter (CSV)");
  cx->add_option("--roots", xa.roots, "complex roots r1,r2,r3 as a+bi")
      ->required();
  cx->add_option("--n", xa.n, "polynomial family index n");
  cx->add_option("--alpha", xa.alpha, "exponents a1,a2,a3 (default 1/2 each)");
  cx->add_option("--out", xa.out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*sp) return cmd_spectrum(sa);
    if (*dn) return cmd_density(da);
    if (*cp) return cmd_compare(ca);
    if (*vf) return cmd_verify(va);
    if (*cx) return cmd_complex(xa);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
