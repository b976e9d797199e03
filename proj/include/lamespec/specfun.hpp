#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "errors.hpp"

namespace lamespec {

/// Settings for the singular-endpoint quadrature routines.
struct QuadratureSpec {
  enum class Method { TanhSinh, GaussChebyshev };

  Method method = Method::TanhSinh;
  int max_level = 12;    // tanh-sinh: level L uses step 2^-L
  double abs_tol = 1e-13;
  double rel_tol = 1e-12;
  int min_nodes = 15;
};

struct QuadResult {
  double value = 0.0;
  double error = std::numeric_limits<double>::infinity();
  int level = 0;
  bool converged = false;
};

/// Tanh-sinh (double exponential) quadrature on (lo, hi).
///
/// The integrand receives (x, dlo, dhi) where dlo = x - lo and dhi = hi - x
/// are computed without cancellation, so inverse-square-root and logarithmic
/// endpoint singularities are resolved to near machine precision.
template <class F3>
QuadResult tanh_sinh(F3&& f, double lo, double hi,
                     const QuadratureSpec& q = {}) {
  const double halfw = 0.5 * (hi - lo);
  const double width = hi - lo;
  const double pi_half = std::numbers::pi / 2.0;

  auto estimate = [&](double h) {
    double sum = pi_half * f(lo + halfw, halfw, halfw);
    for (int k = 1;; ++k) {
      const double t = k * h;
      if (t > 6.6) break;
      const double u = pi_half * std::sinh(t);
      const double em = std::exp(-2.0 * u);
      const double d = 2.0 * em / (1.0 + em);              // 1 - tanh(u)
      const double sech2 = 4.0 * em / ((1.0 + em) * (1.0 + em));
      const double w = pi_half * std::cosh(t) * sech2;
      const double near = halfw * d;
      if (!(near > 0.0) || !(w > 0.0)) break;
      const double far = width - near;
      sum += w * (f(hi - near, far, near) + f(lo + near, near, far));
    }
    return sum * h * halfw;
  };

  QuadResult res;
  double prev = std::numeric_limits<double>::quiet_NaN();
  for (int level = 2; level <= q.max_level; ++level) {
    const double cur = estimate(1.0 / double(1 << level));
    res.level = level;
    res.value = cur;
    if (level > 2) {
      res.error = std::abs(cur - prev);
      if (res.error <= std::max(q.abs_tol, q.rel_tol * std::abs(cur))) {
        res.converged = true;
        break;
      }
    }
    prev = cur;
  }
  return res;
}

namespace detail {

/// Gauss-Chebyshev rule with the arcsine weight divided back out;
/// exact treatment of inverse-square-root endpoints, N doubled to tolerance.
template <class F>
QuadResult gauss_chebyshev(F&& f, double lo, double hi,
                           const QuadratureSpec& q) {
  const double halfw = 0.5 * (hi - lo);
  const double mid = 0.5 * (lo + hi);
  auto estimate = [&](int n) {
    double sum = 0.0;
    for (int k = 1; k <= n; ++k) {
      const double theta = (2.0 * k - 1.0) * std::numbers::pi / (2.0 * n);
      const double c = std::cos(theta);
      const double x = mid + halfw * c;
      // sqrt((x-lo)(hi-x)) = halfw * sin(theta)
      sum += f(x) * halfw * std::sin(theta);
    }
    return sum * std::numbers::pi / n;
  };
  QuadResult res;
  double prev = std::numeric_limits<double>::quiet_NaN();
  int n = std::max(q.min_nodes, 32);
  for (int pass = 0; pass < 16; ++pass, n *= 2) {
    const double cur = estimate(n);
    res.value = cur;
    res.level = pass;
    if (pass > 0) {
      res.error = std::abs(cur - prev);
      if (res.error <= std::max(q.abs_tol, q.rel_tol * std::abs(cur))) {
        res.converged = true;
        break;
      }
    }
    prev = cur;
    if (n > (1 << 20)) break;
  }
  return res;
}

}  // namespace detail

/// Arithmetic-geometric mean of two positive numbers, to 1e-15 relative.
/// Convergence is quadratic; `iterations`, when given, reports the count.
inline double agm(double a, double b, int* iterations = nullptr) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw NonPositiveInput("agm requires strictly positive arguments");
  }
  int count = 0;
  while (std::abs(a - b) > 1e-15 * std::max(a, b) && count < 60) {
    const double am = 0.5 * (a + b);
    const double gm = std::sqrt(a * b);
    a = am;
    b = gm;
    ++count;
  }
  if (iterations) *iterations = count;
  return 0.5 * (a + b);
}

/// Complete elliptic integral of the first kind, real modulus 0 <= zeta < 1.
inline double ellip_k(double zeta) {
  if (!(zeta >= 0.0) || zeta >= 1.0) {
    throw ModulusOutOfRange("ellip_k requires 0 <= zeta < 1");
  }
  const double comp = std::sqrt((1.0 - zeta) * (1.0 + zeta));
  return std::numbers::pi / (2.0 * agm(1.0, comp));
}

/// K at a purely imaginary modulus: K(i kappa), real-valued for kappa >= 0.
/// Follows from the descending Landen map: K(i k) = pi / (2 agm(1, sqrt(1+k^2))).
inline double ellip_k_imag(double kappa) {
  if (!(kappa >= 0.0)) {
    throw NegativeInput("ellip_k_imag requires kappa >= 0");
  }
  return std::numbers::pi / (2.0 * agm(1.0, std::sqrt(1.0 + kappa * kappa)));
}

/// Gauss hypergeometric value F(1/2, 1/2, 1; z) for z < 1, via the identity
/// K(zeta) = (pi/2) F(1/2, 1/2, 1; zeta^2) and its imaginary-modulus
/// continuation for z < 0.
inline double f_half(double z) {
  if (!(z < 1.0)) {
    throw ArgumentAtOrAboveOne("f_half requires z < 1");
  }
  if (z >= 0.0) {
    return 2.0 / std::numbers::pi * ellip_k(std::sqrt(z));
  }
  return 2.0 / std::numbers::pi * ellip_k_imag(std::sqrt(-z));
}

/// Independent oracle for f_half: Euler integral
///   F(1/2,1/2,1;z) = (1/pi) \int_0^1 t^{-1/2} (1-t)^{-1/2} (1-tz)^{-1/2} dt.
inline double f_half_quadrature_oracle(double z, const QuadratureSpec& q = {}) {
  if (!(z < 1.0)) {
    throw ArgumentAtOrAboveOne("f_half oracle requires z < 1");
  }
  auto integrand = [z](double x, double dlo, double dhi) {
    // 1 - xz rewritten as (1-z) + z(1-x) so it stays accurate for z near 1
    const double one_minus_xz = (z >= 0.0) ? (1.0 - z) + z * dhi : 1.0 - x * z;
    return 1.0 / std::sqrt(dlo * dhi * one_minus_xz);
  };
  const QuadResult res = tanh_sinh(integrand, 0.0, 1.0, q);
  if (!res.converged) {
    throw QuadratureNotConverged("f_half_quadrature_oracle");
  }
  return res.value / std::numbers::pi;
}

/// Quadrature for integrands with at worst inverse-square-root endpoint
/// singularities. Plain f(x) interface; the tanh-sinh path never evaluates
/// f at the endpoints themselves.
///
/// Because f only sees the rounded abscissa, expressions like 1-x inside f
/// lose half the mantissa near a singular endpoint, so this interface cannot
/// resolve past ~sqrt(eps) relative accuracy; the requested tolerance is
/// floored there. Use the distance-aware tanh_sinh(f(x, dlo, dhi), ...)
/// directly when full precision is needed.
template <class F>
double quad_singular(F&& f, double lo, double hi, const QuadratureSpec& q = {}) {
  if (!(lo < hi)) throw BadRange("quad_singular requires lo < hi");
  QuadratureSpec qp = q;
  qp.rel_tol = std::max(
      q.rel_tol, std::sqrt(std::numeric_limits<double>::epsilon()));
  QuadResult res;
  if (q.method == QuadratureSpec::Method::GaussChebyshev) {
    res = detail::gauss_chebyshev(f, lo, hi, qp);
  } else {
    // Nodes so close to an endpoint that x rounds onto it carry
    // double-exponentially small weight; drop them instead of letting the
    // (possibly singular) integrand overflow there.
    auto guarded = [&f, lo, hi](double x, double, double) {
      if (!(x > lo) || !(x < hi)) return 0.0;
      const double v = f(x);
      return std::isfinite(v) ? v : 0.0;
    };
    res = tanh_sinh(guarded, lo, hi, qp);
  }
  if (!res.converged) {
    throw QuadratureNotConverged("quad_singular");
  }
  return res.value;
}

}  // namespace lamespec
