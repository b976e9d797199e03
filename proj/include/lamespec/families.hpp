#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <vector>

#include "cubic.hpp"
#include "errors.hpp"
#include "tridiag.hpp"

namespace lamespec {

/// Degree of the polynomial part of a Lame solution with square-root
/// markers k: m = n/2 - (k1+k2+k3) when that is a nonnegative integer.
inline int family_degree(int n, const FamilyKappa& k) {
  if (n < 0) throw DegreeTooSmall("family_degree requires n >= 0");
  const int h = k.halves();
  if (n < h || (n - h) % 2 != 0) {
    throw InadmissibleParity("kappa triple inadmissible for this n");
  }
  return (n - h) / 2;
}

/// Sign convention of the scaled-energy map E = sigma * n(n+1) * t.
/// The smooth algebraic form writes the linear coefficient as
/// -(n(n+1)z + E)/4, whose root is -E/(n(n+1)); sigma = -1 is the value
/// uniquely selected by the ODE residual certification.
inline constexpr double energy_sign = -1.0;

inline double energy_from_t(int n, double t) {
  return energy_sign * double(n) * double(n + 1) * t;
}

namespace detail {

/// Linear correction picked up by the polynomial part when the square-root
/// factors prod (z-e_i)^{k_i} are stripped from the Lame equation:
/// the zeroth-order coefficient becomes -(n(n+1)z+E)/4 + c1 z + c0.
struct KappaCorrection {
  double c1, c0;
};

inline KappaCorrection kappa_correction(const Cubic& c, const FamilyKappa& k) {
  const double e[3] = {c.e1, c.e2, c.e3};
  const double kk[3] = {k.k1, k.k2, k.k3};
  double c1 = 0.0, c0 = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (j == i) continue;
      c1 += 0.5 * kk[i];
      c0 += 0.5 * kk[i] * (-e[j]);
    }
  }
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      const int l = 3 - i - j;  // remaining index
      c1 += 2.0 * kk[i] * kk[j];
      c0 += 2.0 * kk[i] * kk[j] * (-e[l]);
    }
  }
  return {c1, c0};
}

}  // namespace detail

/// One spectral family: Van Vleck roots (reporting frame) and the matching
/// energies of the smooth algebraic Lame equation.
struct FamilySpectrum {
  int n = 0;
  FamilyKappa kappa{};
  int m = 0;
  std::vector<double> roots_t;
  std::vector<double> roots_E;
};

inline FamilySpectrum family_spectrum(const Cubic& c, int n,
                                      const FamilyKappa& k) {
  FamilySpectrum fs;
  fs.n = n;
  fs.kappa = k;
  fs.m = family_degree(n, k);

  const ExponentTriple ea = effective_exponents(lame_exponents(), k);
  const auto corr = detail::kappa_correction(c, k);
  const double theta = double(fs.m) * (fs.m - 1 + ea.sum());

  if (fs.m == 0) {
    // degree-0 matching: the stripped equation's zeroth coefficient must
    // vanish identically, which pins E; t is then the root of the original
    // linear coefficient.
    const double energy = 4.0 * corr.c0;
    const double t = (n == 0) ? 0.0 : -energy / (double(n) * double(n + 1));
    fs.roots_t = {t};
    fs.roots_E = {energy};
    return fs;
  }

  const TridiagSpec spec = build_tridiag(c, linear_coefficient(c, ea), fs.m);
  for (double eig : eigenvalues(spec)) {
    const double t = eig + c.e2;
    fs.roots_t.push_back(t);
    fs.roots_E.push_back(4.0 * corr.c0 - 4.0 * theta * t);
  }
  return fs;
}

/// The four kappa triples admissible for n's parity (type-4 at n=1 is empty
/// and omitted). Total root count across the collection is 2n+1.
inline std::vector<FamilySpectrum> union_spectrum(const Cubic& c, int n) {
  if (n < 1) throw DegreeTooSmall("union_spectrum requires n >= 1");
  const bool even = n % 2 == 0;
  const std::vector<FamilyKappa> kappas =
      even ? std::vector<FamilyKappa>{{0, 0, 0}, {0.5, 0.5, 0}, {0.5, 0, 0.5},
                                      {0, 0.5, 0.5}}
           : std::vector<FamilyKappa>{{0.5, 0, 0}, {0, 0.5, 0}, {0, 0, 0.5},
                                      {0.5, 0.5, 0.5}};
  std::vector<FamilySpectrum> out;
  for (const auto& k : kappas) {
    if (n < k.halves()) continue;  // type 4 at n = 1
    out.push_back(family_spectrum(c, n, k));
  }
  return out;
}

/// Max relative residual of the smooth algebraic Lame equation for the
/// solution prod (z-e_i)^{k_i} * S~(z), with S~ given by its shifted-frame
/// coefficients (leading first), sampled at 20 generic complex points.
inline double lame_ode_residual(const Cubic& c, int n, const FamilyKappa& k,
                                std::span<const double> poly_coeffs,
                                double energy) {
  using C = std::complex<double>;
  const double kk[3] = {k.k1, k.k2, k.k3};
  const double e[3] = {c.e1, c.e2, c.e3};
  const C center(0.5 * (c.e1 + c.e3), 0.0);
  const double radius = 1.5 * c.span();

  auto horner = [&](C zeta, int deriv) {
    // Horner evaluation of the deriv-th derivative of S~ at zeta
    const int m = int(poly_coeffs.size()) - 1;
    C acc = 0.0;
    for (int i = 0; i + deriv <= m; ++i) {
      const int pow = m - i;  // power of the i-th coefficient
      double fac = 1.0;
      for (int d = 0; d < deriv; ++d) fac *= double(pow - d);
      acc = acc * zeta + fac * poly_coeffs[i];
    }
    return acc;
  };

  double worst = 0.0;
  for (int p = 0; p < 20; ++p) {
    const double phi = 2.0 * std::numbers::pi * (p + 0.37) / 20.0;
    const C z = center + radius * C(std::cos(phi), std::sin(phi));
    const C zeta = z - c.e2;

    const C s0 = horner(zeta, 0);
    const C s1 = horner(zeta, 1);
    const C s2 = horner(zeta, 2);

    C logd = 0.0, logd2 = 0.0, half_sum = 0.0;
    C qprod = 1.0;
    for (int i = 0; i < 3; ++i) {
      const C inv = 1.0 / (z - e[i]);
      logd += kk[i] * inv;
      logd2 -= kk[i] * inv * inv;
      half_sum += 0.5 * inv;
      qprod *= (z - e[i]);
    }
    const C d2_term = (logd2 + logd * logd) * s0 + 2.0 * logd * s1 + s2;
    const C d1_term = half_sum * (logd * s0 + s1);
    const C v_term =
        -(double(n) * double(n + 1) * z + energy) / (4.0 * qprod) * s0;

    const C resid = d2_term + d1_term + v_term;
    const double scale = std::max(
        {std::abs(d2_term), std::abs(d1_term), std::abs(v_term), 1e-300});
    worst = std::max(worst, std::abs(resid) / scale);
  }
  return worst;
}

/// Reconstructs the root_index-th Lame solution of the (n, kappa) family and
/// certifies it against the original equation. Returns the max relative
/// residual over the sample points.
inline double verify_lame_residual(const Cubic& c, int n, const FamilyKappa& k,
                                   std::size_t root_index) {
  const FamilySpectrum fs = family_spectrum(c, n, k);
  if (root_index >= fs.roots_t.size()) {
    throw IndexOutOfRange("verify_lame_residual root index");
  }
  std::vector<double> coeffs{1.0};
  if (fs.m >= 1) {
    const ExponentTriple ea = effective_exponents(lame_exponents(), k);
    const TridiagSpec spec = build_tridiag(c, linear_coefficient(c, ea), fs.m);
    coeffs = null_vector(spec, fs.roots_t[root_index] - c.e2).coeffs;
  }
  return lame_ode_residual(c, n, k, coeffs, fs.roots_E[root_index]);
}

}  // namespace lamespec
