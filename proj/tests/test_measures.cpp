#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "lamespec/lamespec.hpp"

using namespace lamespec;

namespace {

std::vector<double> union_roots(const Cubic& c, int n) {
  std::vector<double> all;
  for (const auto& fs : union_spectrum(c, n)) {
    all.insert(all.end(), fs.roots_t.begin(), fs.roots_t.end());
  }
  return all;
}

}  // namespace

TEST_CASE("empirical measure basics") {
  const auto em = empirical(std::vector<double>{0.3, -0.1});
  REQUIRE(em.atoms.size() == 2);
  CHECK(em.atoms[0] == -0.1);
  CHECK(em.atoms[1] == 0.3);
  CHECK(em.weight() == 0.5);
  CHECK(em.cdf(-1.0) == 0.0);
  CHECK(em.cdf(-0.1) == 0.5);  // right-continuous at the atom
  CHECK(em.cdf(0.0) == 0.5);
  CHECK(em.cdf(0.3) == 1.0);
  CHECK(em.cdf(9.0) == 1.0);

  CHECK_THROWS_AS(empirical(std::vector<double>{}), EmptyInput);
  CHECK_THROWS_AS(empirical(std::vector<double>{1.0, 1.0}), DuplicateAtoms);
}

TEST_CASE("empirical measure of the m=1 Lame spectrum") {
  const Cubic c = make_cubic(1, 0, -1);
  const auto eig =
      eigenvalues(build_tridiag(c, linear_coefficient(c, lame_exponents()), 1));
  const auto em = empirical(eig);
  const double r3 = 1.0 / std::sqrt(3.0);
  CHECK(em.atoms[0] == Catch::Approx(-r3).epsilon(1e-12));
  CHECK(em.atoms[1] == Catch::Approx(r3).epsilon(1e-12));
}

TEST_CASE("ks_distance: quantile construction and median atom") {
  const Cubic c = make_cubic(1, 0, -1);
  DensityModel dm{c};

  // atoms at exact cdf quantiles k/(n+2) give distance <= 1/(n+1)
  const int n = 49;
  std::vector<double> quantiles;
  for (int k = 1; k <= n + 1; ++k) {
    double lo = c.e3 + 1e-9, hi = c.e1 - 1e-9;
    const double target = double(k) / (n + 2);
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      (cdf(dm, mid) < target ? lo : hi) = mid;
    }
    quantiles.push_back(0.5 * (lo + hi));
  }
  CHECK(ks_distance(empirical(quantiles), dm) <= 1.0 / (n + 1) + 1e-6);

  // a single atom at the median of a symmetric cubic: sup gap is 1/2
  CHECK(ks_distance(empirical(std::vector<double>{0.0}), dm) ==
        Catch::Approx(0.5).margin(1e-6));
}

TEST_CASE("ks_distance decreases along the union spectra") {
  const Cubic c = make_cubic(1, 0, -1);
  DensityModel dm{c};
  const double k100 = ks_distance(empirical(union_roots(c, 100)), dm);
  const double k400 = ks_distance(empirical(union_roots(c, 400)), dm);
  CHECK(k400 < k100);
}

TEST_CASE("ks_distance is affine-equivariant") {
  const Cubic c = make_cubic(1, 0, -1);
  DensityModel dm{c};
  const auto roots = union_roots(c, 30);
  const double base = ks_distance(empirical(roots), dm);

  const double a = 2.0, b = 3.0;
  std::vector<double> mapped;
  for (double t : roots) mapped.push_back(a * t + b);
  const Cubic cm = make_cubic(a * c.e1 + b, a * c.e2 + b, a * c.e3 + b);
  DensityModel dmm{cm};
  CHECK(ks_distance(empirical(mapped), dmm) == Catch::Approx(base).margin(1e-6));
}

TEST_CASE("histogram basics") {
  const auto em = empirical(std::vector<double>{0.25, 0.75});
  const auto one = histogram(em, 1, 0.0, 1.0);
  REQUIRE(one.size() == 1);
  CHECK(one[0].count == 2);
  CHECK(one[0].height == Catch::Approx(1.0));  // 1/binwidth with width 1

  const auto four = histogram(em, 4, 0.0, 1.0);
  double mass = 0.0;
  for (const auto& b : four) mass += b.height * (b.hi - b.lo);
  CHECK(mass == Catch::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(histogram(em, 0, 0.0, 1.0), BadRange);
  CHECK_THROWS_AS(histogram(em, 4, 1.0, 0.0), BadRange);
}

TEST_CASE("histogram tracks the density for n = 400") {
  const Cubic c = make_cubic(1, 0, -1);
  DensityModel dm{c};
  const auto em = empirical(union_roots(c, 400));
  const auto hist = histogram(em, 40, c.e3, c.e1);

  double mass = 0.0, worst = 0.0;
  for (const auto& b : hist) {
    mass += b.height * (b.hi - b.lo);
    const double center = 0.5 * (b.lo + b.hi);
    if (std::abs(center - c.e2) < 0.05 * c.span()) continue;
    worst = std::max(worst,
                     std::abs(b.height - rho(dm, center, Formula::III)));
  }
  CHECK(mass == Catch::Approx(1.0).epsilon(1e-12));
  CHECK(worst < 0.15);
}
