#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "cubic.hpp"
#include "errors.hpp"

namespace lamespec {

/// Entries of the (m+1)x(m+1) tridiagonal matrix M_m whose characteristic
/// roots are the Van Vleck roots t_{m,j} (shifted frame).
///
/// The matrix has (t - xi_i) on the diagonal, offA on the superdiagonal and
/// offG on the subdiagonal; only the products psi_i = offA_i * offG_i enter
/// the spectrum. Index origin follows the matrix rows: xi[0..m] are the
/// diagonal entries, offA[0..m-1] and offG[0..m-1] the off-diagonals of
/// rows 1..m.
struct TridiagSpec {
  int m = 0;           // polynomial-part degree; matrix size m+1
  double theta = 0.0;  // m (m - 1 + alpha)
  std::vector<double> xi;    // size m+1
  std::vector<double> offA;  // size m
  std::vector<double> offG;  // size m
  std::vector<double> psi;   // size m, psi[k] = offA[k] * offG[k]
};

/// Coefficients a_0..a_m (leading first) of a Stieltjes polynomial
/// S~(z) = a_0 z^m + ... + a_m in the shifted frame, scaled so the
/// max-magnitude entry is 1.
struct SolutionVector {
  std::vector<double> coeffs;
};

inline TridiagSpec build_tridiag(const Cubic& c, const LinearCoefficient& p,
                                 int m) {
  if (m < 1) throw DegreeTooSmall("build_tridiag requires m >= 1");
  TridiagSpec s;
  s.m = m;
  s.theta = double(m) * (m - 1 + p.alpha);
  s.xi.resize(m + 1);
  s.offA.resize(m);
  s.offG.resize(m);
  s.psi.resize(m);
  for (int i = 1; i <= m + 1; ++i) {
    const double k = double(m - i);
    s.xi[i - 1] = -(c.v * k * (k + 1) + p.beta * (k + 1)) / s.theta;
  }
  for (int i = 2; i <= m + 1; ++i) {
    const double k = double(m - i);
    s.offA[i - 2] = (k * (k + 1) + p.alpha * (k + 1)) / s.theta - 1.0;
    s.offG[i - 2] = (c.w * (k + 1) * (k + 2) + p.gamma * (k + 2)) / s.theta;
    s.psi[i - 2] = s.offA[i - 2] * s.offG[i - 2];
  }
  return s;
}

inline bool check_psi_positivity(const TridiagSpec& s) {
  return std::all_of(s.psi.begin(), s.psi.end(),
                     [](double p) { return p > 0.0; });
}

namespace detail {

/// Sturm count: number of eigenvalues of the symmetrized matrix below x.
inline int sturm_count(std::span<const double> d, std::span<const double> psi,
                       double x) {
  const double tiny = 1e-300;
  int count = 0;
  double q = d[0] - x;
  if (q < 0.0) ++count;
  for (std::size_t i = 1; i < d.size(); ++i) {
    if (q == 0.0) q = tiny;
    q = d[i] - x - psi[i - 1] / q;
    if (q < 0.0) ++count;
  }
  return count;
}

inline std::vector<double> bisection_eigenvalues(std::span<const double> d,
                                                 std::span<const double> psi,
                                                 double tol_scale) {
  const std::size_t n = d.size();
  double lo = d[0], hi = d[0];
  for (std::size_t i = 0; i < n; ++i) {
    const double rl = (i > 0) ? std::sqrt(psi[i - 1]) : 0.0;
    const double rr = (i + 1 < n) ? std::sqrt(psi[i]) : 0.0;
    lo = std::min(lo, d[i] - rl - rr);
    hi = std::max(hi, d[i] + rl + rr);
  }
  const double radius = std::max({std::abs(lo), std::abs(hi), hi - lo, 1e-30});
  const double tol = tol_scale * radius;

  std::vector<double> eig(n);
  for (std::size_t j = 0; j < n; ++j) {
    double a = lo, b = hi;
    for (int it = 0; it < 200 && (b - a) > tol; ++it) {
      const double mid = 0.5 * (a + b);
      if (sturm_count(d, psi, mid) >= int(j) + 1) {
        b = mid;
      } else {
        a = mid;
      }
    }
    eig[j] = 0.5 * (a + b);
  }
  return eig;
}

}  // namespace detail

/// Van Vleck roots (shifted frame): eigenvalues of the matrix with diagonal
/// xi and off-diagonal products psi, ascending. Requires psi > 0, which makes
/// the matrix similar to a real symmetric tridiagonal one with off-diagonals
/// sqrt(psi); computed by bisection on Sturm sequences to 1e-13 of the
/// Gershgorin radius.
inline std::vector<double> eigenvalues(const TridiagSpec& s) {
  if (!check_psi_positivity(s)) {
    throw NonPositivePsi("eigenvalues requires all psi > 0");
  }
  return detail::bisection_eigenvalues(s.xi, s.psi, 1e-13);
}

/// Recurrence polynomial Sp_{m,i}(x): determinant of the upper i x i
/// principal submatrix of M_m at t = x. Iterates are rescaled by powers of
/// two so large degrees do not overflow; the returned value is the true one
/// whenever it is representable.
inline double sp_eval(const TridiagSpec& s, int i, double x) {
  if (i < 0 || i > s.m + 1) throw IndexOutOfRange("sp_eval index");
  double prev = 0.0;  // Sp_{m,-1}
  double cur = 1.0;   // Sp_{m,0}
  int exp2 = 0;
  for (int k = 1; k <= i; ++k) {
    double next = (x - s.xi[k - 1]) * cur;
    if (k >= 2) next -= s.psi[k - 2] * prev;
    prev = cur;
    cur = next;
    const double mag = std::max(std::abs(cur), std::abs(prev));
    if (mag > 1e150 || (mag > 0.0 && mag < 1e-150)) {
      int e = 0;
      std::frexp(mag, &e);
      cur = std::ldexp(cur, -e);
      prev = std::ldexp(prev, -e);
      exp2 += e;
    }
  }
  return std::ldexp(cur, exp2);
}

/// Nontrivial solution A of M_m A = 0 at t = eig, by forward substitution,
/// normalized to unit max magnitude. The last-row residual certifies that
/// eig is in fact an eigenvalue.
inline SolutionVector null_vector(const TridiagSpec& s, double eig) {
  const int m = s.m;
  std::vector<double> a(m + 1);
  a[0] = 1.0;
  a[1] = -(eig - s.xi[0]) * a[0] / s.offA[0];
  for (int i = 1; i < m; ++i) {
    a[i + 1] = -(s.offG[i - 1] * a[i - 1] + (eig - s.xi[i]) * a[i]) / s.offA[i];
  }

  double amax = 0.0;
  for (double& ai : a) amax = std::max(amax, std::abs(ai));
  for (double& ai : a) ai /= amax;

  // residual of all rows (rows 0..m-1 are zero by construction up to rounding)
  double rmax = 0.0;
  rmax = std::abs((eig - s.xi[0]) * a[0] + s.offA[0] * a[1]);
  for (int i = 1; i < m; ++i) {
    rmax = std::max(rmax, std::abs(s.offG[i - 1] * a[i - 1] +
                                   (eig - s.xi[i]) * a[i] +
                                   s.offA[i] * a[i + 1]));
  }
  rmax = std::max(rmax,
                  std::abs(s.offG[m - 1] * a[m - 1] + (eig - s.xi[m]) * a[m]));

  double scale = std::abs(eig);
  for (double x : s.xi) scale = std::max(scale, std::abs(x));
  for (double x : s.offA) scale = std::max(scale, std::abs(x));
  for (double x : s.offG) scale = std::max(scale, std::abs(x));

  if (rmax > 1e-9 * scale) {
    throw NotAnEigenvalue("null_vector residual exceeds tolerance");
  }
  return SolutionVector{std::move(a)};
}

}  // namespace lamespec
