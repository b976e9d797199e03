#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "lamespec/lamespec.hpp"

using namespace lamespec;

namespace {

const Formula kAllFormulas[] = {Formula::I, Formula::II, Formula::III,
                                Formula::IVClosed, Formula::IVIntegral};

}  // namespace

TEST_CASE("omega closed form, symmetry, bounds") {
  for (double s : {-0.9, -0.5, 0.1, 0.5, 0.9}) {
    CHECK(omega(1, -1, s) == Catch::Approx(std::abs(s)).epsilon(1e-14));
  }
  CHECK(omega(2, -1, 1) == Catch::Approx(0.6));
  CHECK_THROWS_AS(omega(0, 0, 1), ZeroDenominator);

  std::mt19937 rng(55u);
  std::uniform_real_distribution<double> up(0.1, 4.0);
  for (int trial = 0; trial < 100; ++trial) {
    const double x1 = up(rng), x2 = -up(rng);
    std::uniform_real_distribution<double> ut(x2, x1);
    const double t = ut(rng);
    CHECK(omega(x1, x2, t) == Catch::Approx(omega(x2, x1, t)));
    const double om = omega(x1, x2, t);
    CHECK(om >= 0.0);
    CHECK(om <= 1.0);
  }
}

TEST_CASE("nu_bounds: symmetric case and quadratic relations") {
  const Cubic c = make_cubic(1, 0, -1);
  const auto nb = nu_bounds(c, 0.5);
  CHECK(nb.nu_min == Catch::Approx((2.0 - std::sqrt(3.0)) / 4.0).epsilon(1e-12));
  CHECK(nb.nu_max == Catch::Approx((2.0 + std::sqrt(3.0)) / 4.0).epsilon(1e-12));
  CHECK_THROWS_AS(nu_bounds(c, 1.5), OutOfSupport);

  const Cubic c2 = make_cubic(2, 0, -1);
  for (double s : {-0.7, -0.2, 0.3, 1.2, 1.9}) {
    const auto b = nu_bounds(c2, s);
    CHECK(b.nu_max > b.nu_min);
    CHECK(b.nu_min >= 0.0);
    const double ss = s - c2.e2;
    CHECK(b.nu_min * b.nu_max ==
          Catch::Approx(ss * ss / (c2.v * c2.v - 4.0 * c2.w)).epsilon(1e-10));
  }
  CHECK(nu_bounds(c, 1e-9).nu_min <= 1e-15);
}

TEST_CASE("rho: endpoint value, symmetry, and domain guards") {
  const Cubic c = make_cubic(1, 0, -1);
  DensityModel dm{c};
  const double endpoint = 1.0 / (2.0 * std::sqrt(2.0));
  CHECK(std::abs(rho(dm, 1.0 - 1e-12, Formula::III) - endpoint) <= 1e-10);

  for (double s : {0.1, 0.4, 0.8, 0.99}) {
    CHECK(rho(dm, s, Formula::III) ==
          Catch::Approx(rho(dm, -s, Formula::III)).epsilon(1e-12));
    CHECK(rho(dm, s, Formula::I) ==
          Catch::Approx(rho(dm, s, Formula::III)).epsilon(1e-10));
  }
  CHECK_THROWS_AS(rho(dm, 1.5, Formula::III), OutOfSupport);
  CHECK_THROWS_AS(rho(dm, -1.0, Formula::III), OutOfSupport);
  CHECK_THROWS_AS(rho(dm, 1e-14, Formula::III), AtLogSingularity);
}

TEST_CASE("five density routes agree away from e2") {
  for (const Cubic& c :
       {make_cubic(1, 0, -1), make_cubic(2, 0, -1), make_cubic(5, 1, -3)}) {
    DensityModel dm{c};
    const double span = c.span();
    for (int k = 0; k < 60; ++k) {
      const double s = c.e3 + (k + 0.5) / 60.0 * span;
      if (std::abs(s - c.e1) < 0.01 * span ||
          std::abs(s - c.e2) < 0.01 * span ||
          std::abs(s - c.e3) < 0.01 * span) {
        continue;
      }
      double lo = 0.0, hi = 0.0;
      bool first = true;
      for (Formula f : kAllFormulas) {
        const double v = rho(dm, s, f);
        lo = first ? v : std::min(lo, v);
        hi = first ? v : std::max(hi, v);
        first = false;
      }
      CHECK((hi - lo) / hi <= 1e-8);
    }
  }
}

TEST_CASE("limit_coeffs") {
  const Cubic c = make_cubic(1, 0, -1);
  CHECK(limit_coeffs(0.0, c).first == Catch::Approx(-c.v).margin(1e-15));
  CHECK(limit_coeffs(0.0, c).second == Catch::Approx(0.0).margin(1e-15));
  CHECK(limit_coeffs(1.0, c).first == Catch::Approx(0.0).margin(1e-15));
  CHECK(limit_coeffs(1.0, c).second == Catch::Approx(0.0).margin(1e-15));
  CHECK(limit_coeffs(0.5, c).second == Catch::Approx(3.0 / 16.0));

  // proof-side band containment: [xi(tau) +- 2 sqrt(psi(tau))] inside the
  // shifted support, on a tau grid
  const Cubic c2 = make_cubic(2.5, 0.4, -1.25);
  for (int i = 0; i <= 100; ++i) {
    const auto [x, p] = limit_coeffs(i / 100.0, c2);
    CHECK(p >= 0.0);
    CHECK(x - 2.0 * std::sqrt(p) >= (c2.e3 - c2.e2) - 1e-12);
    CHECK(x + 2.0 * std::sqrt(p) <= (c2.e1 - c2.e2) + 1e-12);
  }
}

TEST_CASE("cdf endpoints, symmetry, monotonicity") {
  const Cubic c = make_cubic(1, 0, -1);
  DensityModel dm{c};
  CHECK(cdf(dm, c.e3) == 0.0);
  CHECK(cdf(dm, c.e3 - 5.0) == 0.0);
  CHECK(std::abs(cdf(dm, c.e1) - 1.0) <= 1e-6);
  CHECK(std::abs(cdf(dm, c.e1 + 5.0) - 1.0) <= 1e-6);
  CHECK(std::abs(cdf(dm, 0.0) - 0.5) <= 1e-6);

  double prev = -1.0;
  for (int k = 0; k <= 1000; ++k) {
    const double s = c.e3 + k / 1000.0 * c.span();
    const double f = cdf(dm, s);
    CHECK(f >= prev - 1e-9);
    prev = f;
  }
}

TEST_CASE("normalization for three cubics") {
  for (const Cubic& c :
       {make_cubic(1, 0, -1), make_cubic(2, 0, -1), make_cubic(5, 1, -3)}) {
    DensityModel dm{c};
    CHECK(std::abs(cdf(dm, c.e1) - 1.0) <= 1e-6);
  }
}

TEST_CASE("heun residual small inside, guarded near singularities") {
  const Cubic c = make_cubic(1, 0, -1);
  DensityModel dm{c};
  for (double s : {0.5, -0.5}) {
    CHECK(heun_residual(dm, s).relative() <= 1e-5);
  }
  CHECK_THROWS_AS(heun_residual(dm, c.e1 - 0.001 * c.span()),
                  TooCloseToSingularity);
  CHECK_THROWS_AS(heun_residual(dm, 1e-4), TooCloseToSingularity);

  std::mt19937 rng(31415u);
  std::uniform_real_distribution<double> u(c.e3, c.e1);
  int taken = 0;
  while (taken < 50) {
    const double s = u(rng);
    const double dist =
        std::min({std::abs(s - c.e1), std::abs(s - c.e2), std::abs(s - c.e3)});
    if (dist <= 0.03 * c.span()) continue;
    CHECK(heun_residual(dm, s).relative() <= 1e-5);
    ++taken;
  }
}

TEST_CASE("indicial exponents across cubics") {
  for (const Cubic& c :
       {make_cubic(1, 0, -1), make_cubic(2, 0, -1), make_cubic(5, 1, -3)}) {
    for (SingularPoint p :
         {SingularPoint::E1, SingularPoint::E2, SingularPoint::E3}) {
      const auto [lo, hi] = indicial_exponents(c, p);
      CHECK(std::abs(lo) <= 1e-10);
      CHECK(std::abs(hi) <= 1e-10);
    }
    const auto [lo, hi] = indicial_exponents(c, SingularPoint::Infinity);
    CHECK(std::abs(lo - 0.5) <= 1e-10);
    CHECK(std::abs(hi - 1.5) <= 1e-10);
  }
}

TEST_CASE("log asymptote at e2") {
  const Cubic c = make_cubic(1, 0, -1);
  DensityModel dm{c};
  for (double s : {1e-3, -1e-3, 0.5}) {
    CHECK(log_asymptote(c, s) ==
          Catch::Approx(std::log(8.0 / std::abs(s)) / (2.0 * std::numbers::pi))
              .epsilon(1e-13));
    CHECK(log_asymptote(c, s) > 0.0);
  }
  double prev_gap = 1.0;
  for (double d : {1e-3, 1e-5, 1e-7}) {
    const double ratio = rho(dm, d, Formula::III) / log_asymptote(c, d);
    const double gap = std::abs(ratio - 1.0);
    CHECK(gap <= prev_gap + 1e-9);  // slack for the closed-form noise floor
    prev_gap = gap;
  }
  CHECK(prev_gap <= 0.02);
}
