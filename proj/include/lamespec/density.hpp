#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <utility>

#include "cubic.hpp"
#include "errors.hpp"
#include "specfun.hpp"
#include "tridiag.hpp"

namespace lamespec {

/// The three-argument weight entering every closed form of the limiting
/// density. Symmetric in its first two arguments; valued in [0,1] whenever
/// x1 and x2 straddle zero and x3 lies between them.
inline double omega(double x1, double x2, double x3) {
  const double num = (std::abs(x1) + std::abs(x2)) * std::abs(x3);
  const double den =
      std::abs(x1) * std::abs(x2 - x3) + std::abs(x2) * std::abs(x1 - x3);
  if (den == 0.0) throw ZeroDenominator("omega");
  return num / den;
}

/// Roots of (4w - v^2) nu^2 - (4w + 2 v s~) nu - s~^2 = 0 (shifted frame),
/// the integration bounds of the arcsine-averaged density representation.
struct NuBounds {
  double nu_min, nu_max;
};

inline NuBounds nu_bounds(const Cubic& c, double s) {
  if (!(s > c.e3 && s < c.e1)) {
    throw OutOfSupport("nu_bounds requires e3 < s < e1");
  }
  const double ss = s - c.e2;
  const double denom = c.v * c.v - 4.0 * c.w;  // (e1-e3)^2 > 0
  double rad = c.w * (c.w + c.v * ss + ss * ss);
  if (rad < 0.0) rad = 0.0;  // roundoff; analytically >= 0 inside support
  const double root = 2.0 * std::sqrt(rad);
  const double base = 2.0 * c.w + c.v * ss;
  return NuBounds{-(base + root) / denom, -(base - root) / denom};
}

enum class Formula { I, II, III, IVClosed, IVIntegral };

/// Evaluation machinery for the limiting root density rho_Q.
struct DensityModel {
  Cubic cubic;
  Formula preferred = Formula::III;
  QuadratureSpec quad{};

  /// Relative half-width of the refused neighborhood of e2.
  static constexpr double log_singularity_zone = 1e-13;
};

namespace detail {

inline double rho_iv_integral(const Cubic& c, double s,
                              const QuadratureSpec& q) {
  const double e1 = c.e1, e2 = c.e2, e3 = c.e3;
  QuadResult res;
  if (s < e2) {
    // (1/2pi) \int_{e2}^{e1} dx / sqrt((e1-x)(x-e2)(x-e3)(x-s))
    auto f = [&](double, double dlo, double dhi) {
      return 1.0 / std::sqrt(dhi * dlo * (dlo + (e2 - e3)) * (dlo + (e2 - s)));
    };
    res = tanh_sinh(f, e2, e1, q);
  } else {
    // (1/2pi) \int_{e3}^{e2} dx / sqrt((e1-x)(e2-x)(x-e3)(s-x))
    auto f = [&](double, double dlo, double dhi) {
      return 1.0 / std::sqrt((dhi + (e1 - e2)) * dhi * dlo * (dhi + (s - e2)));
    };
    res = tanh_sinh(f, e3, e2, q);
  }
  if (!res.converged) throw QuadratureNotConverged("rho (iv-integral)");
  return res.value / (2.0 * std::numbers::pi);
}

}  // namespace detail

/// The limiting density rho_Q(s) on (e3, e1) \ {e2}, by any of the five
/// equivalent routes. Every closed form is evaluated with the shifted
/// arguments (e1-e2, e3-e2, s-e2).
inline double rho(const DensityModel& dm, double s, Formula formula) {
  const Cubic& c = dm.cubic;
  if (!(s > c.e3 && s < c.e1)) {
    throw OutOfSupport("rho requires e3 < s < e1");
  }
  const double span = c.span();
  const double ss = s - c.e2;
  if (std::abs(ss) < DensityModel::log_singularity_zone * span) {
    throw AtLogSingularity("rho refused within 1e-13*(e1-e3) of e2");
  }

  if (formula == Formula::IVIntegral) {
    return detail::rho_iv_integral(c, s, dm.quad);
  }

  const double om = omega(c.e1 - c.e2, c.e3 - c.e2, ss);
  const double as = std::abs(ss);
  switch (formula) {
    case Formula::I: {
      const double r = std::sqrt((1.0 - om) * (1.0 + om));
      const double one_minus_r = om * om / (1.0 + r);  // stable 1 - r
      const double pref =
          std::sqrt((1.0 + r) / (span * as * om)) / std::numbers::pi;
      return pref * ellip_k_imag(std::sqrt(2.0 * r / one_minus_r));
    }
    case Formula::II: {
      const double r = std::sqrt((1.0 - om) * (1.0 + om));
      const double one_minus_r = om * om / (1.0 + r);
      const double pref = 0.5 * std::sqrt((1.0 + r) / (span * as * om));
      return pref * f_half(-2.0 * r / one_minus_r);
    }
    case Formula::III: {
      return std::sqrt(om / (2.0 * span * as * (1.0 + om))) *
             f_half((1.0 - om) / (1.0 + om));
    }
    case Formula::IVClosed: {
      const double lin = (c.e1 + c.e3 - 2.0 * c.e2) * ss +
                         2.0 * (c.e1 - c.e2) * (c.e2 - c.e3);
      const double dplus = lin + span * as;
      const double dminus = lin - span * as;
      return f_half(dminus / dplus) / std::sqrt(2.0 * dplus);
    }
    default:
      break;
  }
  throw std::logic_error("unreachable formula tag");
}

inline double rho(const DensityModel& dm, double s) {
  return rho(dm, s, dm.preferred);
}

/// Log-singularity asymptote of rho_Q at e2.
inline double log_asymptote(const Cubic& c, double s) {
  const double a = c.e1 - c.e2, b = c.e2 - c.e3;
  return std::log(16.0 * a * b / (c.span() * std::abs(s - c.e2))) /
         (2.0 * std::numbers::pi * std::sqrt(a * b));
}

/// Pointwise limits of the tridiagonal entries along rays i/(m+1) -> tau.
/// Independent of the first-order coefficients.
inline std::pair<double, double> limit_coeffs(double tau, const Cubic& c) {
  const double r = 1.0 - tau;
  return {-c.v * r * r, -c.w * (1.0 - r * r) * r * r};
}

namespace detail {

/// rho for quadrature use: clamps into the open support and swaps to the
/// logarithmic asymptote inside the refused e2-neighborhood (the window is
/// 2e-13 of the span, far below any quadrature tolerance here).
inline double rho_for_integration(const DensityModel& dm, double x) {
  const Cubic& c = dm.cubic;
  const double span = c.span();
  const double eps = 1e-15 * span;
  x = std::clamp(x, c.e3 + eps, c.e1 - eps);
  const double zone = DensityModel::log_singularity_zone * span;
  if (std::abs(x - c.e2) < zone) {
    return log_asymptote(c, c.e2 + (x >= c.e2 ? zone : -zone));
  }
  Formula f = dm.preferred == Formula::IVIntegral ? Formula::III : dm.preferred;
  return rho(dm, x, f);
}

}  // namespace detail

/// Cumulative distribution of mu_Q, split at the interior log singularity.
inline double cdf(const DensityModel& dm, double s) {
  const Cubic& c = dm.cubic;
  if (s <= c.e3) return 0.0;
  if (s >= c.e1) s = c.e1;
  QuadratureSpec q = dm.quad;
  q.abs_tol = std::min(q.abs_tol, 1e-9);
  q.rel_tol = std::min(q.rel_tol, 1e-9);
  auto f = [&](double x, double, double) {
    return detail::rho_for_integration(dm, x);
  };
  double total = 0.0;
  const double upper_lo = std::min(s, c.e2);
  QuadResult r1 = tanh_sinh(f, c.e3, upper_lo, q);
  if (!r1.converged) throw QuadratureNotConverged("cdf (lower branch)");
  total = r1.value;
  if (s > c.e2) {
    QuadResult r2 = tanh_sinh(f, c.e2, s, q);
    if (!r2.converged) throw QuadratureNotConverged("cdf (upper branch)");
    total += r2.value;
  }
  return total;
}

namespace detail {

/// Central differences with 3-level Richardson extrapolation.
template <class F>
std::pair<double, double> richardson_derivatives(F&& f, double s, double h) {
  std::array<double, 3> d1{}, d2{};
  const double f0 = f(s);
  double hk = h;
  for (int k = 0; k < 3; ++k, hk *= 0.5) {
    const double fp = f(s + hk), fmv = f(s - hk);
    d1[k] = (fp - fmv) / (2.0 * hk);
    d2[k] = (fp - 2.0 * f0 + fmv) / (hk * hk);
  }
  auto extrapolate = [](std::array<double, 3> a) {
    const double r1 = a[1] + (a[1] - a[0]) / 3.0;
    const double r2 = a[2] + (a[2] - a[1]) / 3.0;
    return r2 + (r2 - r1) / 15.0;
  };
  return {extrapolate(d1), extrapolate(d2)};
}

}  // namespace detail

struct HeunResidual {
  double absolute;  // |8 Q rho'' + 8 Q' rho' + Q'' rho|
  double scale;     // max term magnitude, for relative comparison
  double relative() const { return absolute / scale; }
};

/// Residual of the second-order ODE satisfied by rho_Q, with Q monic in the
/// reporting frame and derivatives by Richardson-extrapolated central
/// differences of the closed-form density.
inline HeunResidual heun_residual(const DensityModel& dm, double s) {
  const Cubic& c = dm.cubic;
  const double span = c.span();
  const double dist = std::min(
      {std::abs(s - c.e1), std::abs(s - c.e2), std::abs(s - c.e3)});
  if (!(s > c.e3 && s < c.e1) || dist <= 0.02 * span) {
    throw TooCloseToSingularity("heun_residual needs 2% clearance");
  }
  const Formula f =
      dm.preferred == Formula::IVIntegral ? Formula::III : dm.preferred;
  auto eval = [&](double x) { return rho(dm, x, f); };
  const double h = 1e-4 * span;
  auto [d1, d2] = detail::richardson_derivatives(eval, s, h);
  const double r0 = eval(s);

  const double q0 = c.q(s);
  const double q1 = (s - c.e1) * (s - c.e2) + (s - c.e1) * (s - c.e3) +
                    (s - c.e2) * (s - c.e3);
  const double q2 = 2.0 * (3.0 * s - (c.e1 + c.e2 + c.e3));

  const double t2 = 8.0 * q0 * d2, t1 = 8.0 * q1 * d1, t0 = q2 * r0;
  const double scale =
      std::max({std::abs(t2), std::abs(t1), std::abs(t0), 1e-300});
  return HeunResidual{std::abs(t2 + t1 + t0), scale};
}

enum class SingularPoint { E1, E2, E3, Infinity };

/// Indicial exponents of the normalized second-order equation for rho_Q,
/// from numerically evaluated coefficient limits. The finite limits are
/// taken by two-node linear extrapolation at offsets tiny enough that the
/// degenerate double root is resolved well below 1e-10.
inline std::pair<double, double> indicial_exponents(const Cubic& c,
                                                    SingularPoint point) {
  const double esum = c.e1 + c.e2 + c.e3;
  auto a1 = [&](double s) {
    return 1.0 / (s - c.e1) + 1.0 / (s - c.e2) + 1.0 / (s - c.e3);
  };
  auto a2 = [&](double s) { return (3.0 * s - esum) / (4.0 * c.q(s)); };

  double p, q;  // indicial equation zeta^2 + p zeta + q = 0
  if (point == SingularPoint::Infinity) {
    const double big = 1e10 * std::max(c.span(), std::abs(esum));
    auto lim = [&](auto&& f) {
      const double f1 = f(big), f2 = f(2.0 * big);
      return 2.0 * f2 - f1;  // kills the O(1/s) tail
    };
    const double la1 = lim([&](double s) { return s * a1(s); });
    const double la2 = lim([&](double s) { return s * s * a2(s); });
    p = 1.0 - la1;
    q = la2;
  } else {
    const double e = point == SingularPoint::E1   ? c.e1
                     : point == SingularPoint::E2 ? c.e2
                                                  : c.e3;
    // representable offsets; (s - e) cancels exactly inside a1, a2
    const double d1 = (e + 1e-12 * c.span()) - e;
    const double d2 = (e + 2e-12 * c.span()) - e;
    auto lim = [&](auto&& f) {
      const double f1 = f(e + d1), f2 = f(e + d2);
      return f1 - d1 * (f2 - f1) / (d2 - d1);
    };
    const double la1 = lim([&](double s) { return (s - e) * a1(s); });
    const double la2 = lim([&](double s) { return (s - e) * (s - e) * a2(s); });
    p = la1 - 1.0;
    q = la2;
  }
  const double disc = p * p - 4.0 * q;
  if (disc <= 0.0) {
    // numerically degenerate double root
    return {-p / 2.0, -p / 2.0};
  }
  const double sq = std::sqrt(disc);
  double lo = (-p - sq) / 2.0, hi = (-p + sq) / 2.0;
  return {lo, hi};
}

}  // namespace lamespec
