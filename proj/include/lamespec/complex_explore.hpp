#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <vector>

#include "cubic.hpp"
#include "errors.hpp"

namespace lamespec {

/// Monic cubic with distinct complex roots; the second root is shifted to
/// the origin, mirroring the real-case normalization.
struct ComplexCubic {
  std::complex<double> r1, r2, r3;
  std::complex<double> v, w;  // Q(z + r2) = z^3 + v z^2 + w z
  std::complex<double> shift() const { return r2; }
};

inline ComplexCubic make_complex_cubic(std::complex<double> r1,
                                       std::complex<double> r2,
                                       std::complex<double> r3) {
  const double scale =
      std::max({std::abs(r1), std::abs(r2), std::abs(r3), 1.0});
  if (std::abs(r1 - r2) <= 1e-12 * scale || std::abs(r2 - r3) <= 1e-12 * scale ||
      std::abs(r1 - r3) <= 1e-12 * scale) {
    throw NonDistinctRoots("complex cubic roots must be pairwise distinct");
  }
  const std::complex<double> a = r1 - r2, b = r3 - r2;
  return ComplexCubic{r1, r2, r3, -(a + b), a * b};
}

/// Monic polynomial in t, coefficients leading first.
struct PolynomialCoefficients {
  std::vector<std::complex<double>> coeffs;
  int degree() const { return int(coeffs.size()) - 1; }
};

/// Characteristic polynomial Sp_{n,n+1}(t) of the tridiagonal matrix, built
/// by running the 3-term recurrence on coefficient arrays over complex
/// entries. Iterates are rescaled periodically; the result is re-normalized
/// to monic at the end.
inline PolynomialCoefficients sp_coefficients(const ComplexCubic& c,
                                              const ExponentTriple& a, int n) {
  if (n < 1) throw DegreeTooSmall("sp_coefficients requires n >= 1");
  using C = std::complex<double>;
  // first-order coefficients in the shifted frame
  const C A = c.r1 - c.r2, B = c.r3 - c.r2;
  const double alpha = a.sum();
  const C beta = -a.a1 * B - a.a2 * (A + B) - a.a3 * A;
  const C gamma = a.a2 * A * B;
  const double theta = double(n) * (n - 1 + alpha);

  auto xi = [&](int i) {
    const double k = double(n - i);
    return -(c.v * (k * (k + 1)) + beta * (k + 1)) / theta;
  };
  auto psi = [&](int i) {
    const double k = double(n - i);
    const C offa = (k * (k + 1) + alpha * (k + 1)) / theta - 1.0;
    const C offg = (c.w * ((k + 1) * (k + 2)) + gamma * (k + 2)) / theta;
    return offa * offg;
  };

  // ascending-power coefficient arrays of Sp_{n,i-1} and Sp_{n,i}
  std::vector<C> prev;          // Sp_{n,0} = 1
  std::vector<C> cur = {1.0};
  prev.clear();
  double scale_exp = 0.0;  // log2 of the common factor divided out so far
  for (int i = 1; i <= n + 1; ++i) {
    const C x = xi(i);
    std::vector<C> next(cur.size() + 1, C(0.0));
    for (std::size_t k = 0; k < cur.size(); ++k) {
      next[k + 1] += cur[k];      // t * cur
      next[k] -= x * cur[k];      // -xi * cur
    }
    if (i >= 2) {
      const C ps = psi(i);
      for (std::size_t k = 0; k < prev.size(); ++k) next[k] -= ps * prev[k];
    }
    prev = std::move(cur);
    cur = std::move(next);
    if (i % 16 == 0) {
      double mag = 0.0;
      for (const C& z : cur) mag = std::max(mag, std::abs(z));
      if (mag > 1e100) {
        int e = 0;
        std::frexp(mag, &e);
        const double f = std::ldexp(1.0, -e);
        for (C& z : cur) z *= f;
        for (C& z : prev) z *= f;
        scale_exp += e;
      }
    }
  }
  // re-monicize (roots are unaffected by the overall scale)
  const C lead = cur.back();
  PolynomialCoefficients out;
  out.coeffs.resize(cur.size());
  for (std::size_t k = 0; k < cur.size(); ++k) {
    out.coeffs[k] = cur[cur.size() - 1 - k] / lead;
  }
  (void)scale_exp;
  return out;
}

namespace detail {

inline std::complex<double> poly_eval(
    const std::vector<std::complex<double>>& coeffs,
    std::complex<double> z) {
  std::complex<double> acc = 0.0;
  for (const auto& c : coeffs) acc = acc * z + c;
  return acc;
}

inline std::complex<double> poly_deriv_eval(
    const std::vector<std::complex<double>>& coeffs,
    std::complex<double> z) {
  const int d = int(coeffs.size()) - 1;
  std::complex<double> acc = 0.0;
  for (int i = 0; i < d; ++i) acc = acc * z + double(d - i) * coeffs[i];
  return acc;
}

inline double poly_local_scale(const std::vector<std::complex<double>>& coeffs,
                               std::complex<double> z) {
  const double az = std::abs(z);
  double scale = 0.0, zp = 1.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    scale += std::abs(*it) * zp;
    zp *= az;
  }
  return std::max(scale, 1e-300);
}

}  // namespace detail

/// Aberth-Ehrlich simultaneous iteration for all roots of a monic complex
/// polynomial. Converged when every |p(root)| <= 1e-10 * local coefficient
/// scale; throws after 500 sweeps.
inline std::vector<std::complex<double>> aberth_roots(
    const PolynomialCoefficients& p) {
  using C = std::complex<double>;
  const int d = p.degree();
  if (d < 1) throw DegreeTooSmall("aberth_roots requires degree >= 1");

  // Fujiwara bound and centroid for the initial circle
  const C centroid = -p.coeffs[1] / double(d);
  double radius = 0.0;
  for (int k = 1; k <= d; ++k) {
    radius = std::max(radius,
                      2.0 * std::pow(std::abs(p.coeffs[k]), 1.0 / double(k)));
  }
  if (radius == 0.0) radius = 1.0;
  std::vector<C> z(d);
  for (int j = 0; j < d; ++j) {
    const double phi = 2.0 * std::numbers::pi * j / d + 0.7;
    z[j] = centroid + radius * C(std::cos(phi), std::sin(phi));
  }

  for (int sweep = 0; sweep < 500; ++sweep) {
    bool done = true;
    for (int j = 0; j < d; ++j) {
      const C pv = detail::poly_eval(p.coeffs, z[j]);
      if (std::abs(pv) > 1e-10 * detail::poly_local_scale(p.coeffs, z[j])) {
        done = false;
      }
      const C dv = detail::poly_deriv_eval(p.coeffs, z[j]);
      if (dv == C(0.0)) {
        z[j] += 1e-6 * radius;  // nudge off a critical point
        done = false;
        continue;
      }
      const C newton = pv / dv;
      C rep = 0.0;
      for (int i = 0; i < d; ++i) {
        if (i != j) rep += 1.0 / (z[j] - z[i]);
      }
      z[j] -= newton / (1.0 - newton * rep);
    }
    if (done) return z;
  }
  throw NoConvergence("aberth_roots did not converge in 500 sweeps");
}

struct ScatterResult {
  std::vector<std::complex<double>> points;  // reporting frame
  double thickness = 0.0;  // deviation from local collinearity diagnostic
  double min_pair_distance = 0.0;
};

/// Roots of Sp_n for a complex cubic, plus a diagnostic for how close the
/// scatter is to a one-dimensional arc: points are ordered along their
/// principal axis and each interior point's distance to the chord through
/// its neighbors is recorded.
inline ScatterResult scatter(const ComplexCubic& c, int n,
                             const ExponentTriple& a = lame_exponents()) {
  const PolynomialCoefficients p = sp_coefficients(c, a, n);
  std::vector<std::complex<double>> roots = aberth_roots(p);
  for (auto& r : roots) r += c.shift();

  // principal axis via 2x2 covariance
  double mx = 0.0, my = 0.0;
  for (const auto& r : roots) {
    mx += r.real();
    my += r.imag();
  }
  mx /= roots.size();
  my /= roots.size();
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const auto& r : roots) {
    const double dx = r.real() - mx, dy = r.imag() - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  const double angle = 0.5 * std::atan2(2.0 * sxy, sxx - syy);
  const std::complex<double> axis(std::cos(angle), std::sin(angle));
  std::sort(roots.begin(), roots.end(),
            [&](const auto& lhs, const auto& rhs) {
              return (lhs * std::conj(axis)).real() <
                     (rhs * std::conj(axis)).real();
            });

  ScatterResult out;
  out.points = roots;
  for (std::size_t i = 1; i + 1 < roots.size(); ++i) {
    const auto seg = roots[i + 1] - roots[i - 1];
    const double len = std::abs(seg);
    if (len == 0.0) continue;
    const auto rel = roots[i] - roots[i - 1];
    const double dist =
        std::abs((rel * std::conj(seg)).imag()) / len;  // point-line distance
    out.thickness = std::max(out.thickness, dist);
  }
  double mind = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < roots.size(); ++i) {
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      mind = std::min(mind, std::abs(roots[i] - roots[j]));
    }
  }
  out.min_pair_distance = roots.size() > 1 ? mind : 0.0;
  return out;
}

}  // namespace lamespec
