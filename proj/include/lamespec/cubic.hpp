#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "errors.hpp"

namespace lamespec {

/// A monic real cubic with distinct ordered roots e1 > e2 > e3.
///
/// All spectral computation runs on the shifted polynomial
///   Q(z + e2) = (z - (e1-e2)) z (z - (e3-e2)) = z^3 + v z^2 + w z,
/// which places the middle root at the origin. Results are shifted back
/// to the reporting frame by adding e2.
struct Cubic {
  double e1, e2, e3;
  double v, w;  // coefficients of the shifted cubic

  double span() const { return e1 - e3; }
  double shift() const { return e2; }

  /// Monic unshifted value Q(s) = (s-e1)(s-e2)(s-e3).
  double q(double s) const { return (s - e1) * (s - e2) * (s - e3); }
};

inline Cubic make_cubic(double e1, double e2, double e3) {
  const double scale =
      std::max({std::abs(e1), std::abs(e2), std::abs(e3), 1.0});
  const double tol = 1e-14 * scale;
  if (std::abs(e1 - e2) <= tol || std::abs(e2 - e3) <= tol ||
      std::abs(e1 - e3) <= tol) {
    throw NonDistinctRoots("cubic roots must be pairwise distinct");
  }
  if (!(e1 > e2 && e2 > e3)) {
    throw UnorderedRoots("cubic roots must satisfy e1 > e2 > e3");
  }
  const double a = e1 - e2;  // positive shifted root
  const double b = e3 - e2;  // negative shifted root
  return Cubic{e1, e2, e3, -(a + b), a * b};
}

/// Positive residues of the first-order coefficient at the three roots.
struct ExponentTriple {
  double a1, a2, a3;
  double sum() const { return a1 + a2 + a3; }
};

inline ExponentTriple make_exponents(double a1, double a2, double a3) {
  if (!(a1 > 0 && a2 > 0 && a3 > 0)) {
    throw NonPositiveExponent("exponents must be strictly positive");
  }
  return ExponentTriple{a1, a2, a3};
}

/// The classical Lame case.
inline ExponentTriple lame_exponents() { return ExponentTriple{0.5, 0.5, 0.5}; }

/// Square-root markers of a Lame solution of the first kind; each entry is
/// exactly 0 or 1/2.
struct FamilyKappa {
  double k1, k2, k3;

  double sum() const { return k1 + k2 + k3; }
  /// Number of roots carrying a square-root factor.
  int halves() const {
    return (k1 != 0.0) + (k2 != 0.0) + (k3 != 0.0);
  }
};

inline FamilyKappa make_kappa(double k1, double k2, double k3) {
  auto ok = [](double k) { return k == 0.0 || k == 0.5; };
  if (!ok(k1) || !ok(k2) || !ok(k3)) {
    throw std::invalid_argument("kappa entries must be exactly 0 or 1/2");
  }
  return FamilyKappa{k1, k2, k3};
}

/// Coefficients of the first-order term P(z) = alpha z^2 + beta z + gamma
/// in the shifted frame.
struct LinearCoefficient {
  double alpha, beta, gamma;
};

/// P(z) = sum_i a_i prod_{j != i} (z - e~_j), with e~ the shifted roots.
inline LinearCoefficient linear_coefficient(const Cubic& c,
                                            const ExponentTriple& a) {
  if (!(a.a1 > 0 && a.a2 > 0 && a.a3 > 0)) {
    throw NonPositiveExponent("exponents must be strictly positive");
  }
  const double A = c.e1 - c.e2;
  const double B = c.e3 - c.e2;
  // P = a1 z(z-B) + a2 (z-A)(z-B) + a3 (z-A) z
  const double alpha = a.a1 + a.a2 + a.a3;
  const double beta = -a.a1 * B - a.a2 * (A + B) - a.a3 * A;
  const double gamma = a.a2 * A * B;
  return LinearCoefficient{alpha, beta, gamma};
}

/// Exponent shift induced by stripping the square-root factors of a Lame
/// solution: each residue with kappa = 1/2 grows by 1.
inline ExponentTriple effective_exponents(const ExponentTriple& a,
                                          const FamilyKappa& k) {
  return ExponentTriple{a.a1 + 2.0 * k.k1, a.a2 + 2.0 * k.k2,
                        a.a3 + 2.0 * k.k3};
}

}  // namespace lamespec
