#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "density.hpp"
#include "errors.hpp"

namespace lamespec {

/// Uniform probability measure on a finite set of distinct real atoms.
struct EmpiricalMeasure {
  std::vector<double> atoms;  // strictly ascending

  std::size_t count() const { return atoms.size(); }
  double weight() const { return 1.0 / double(atoms.size()); }

  /// Right-continuous CDF value at x.
  double cdf(double x) const {
    auto it = std::upper_bound(atoms.begin(), atoms.end(), x);
    return double(it - atoms.begin()) * weight();
  }
};

inline EmpiricalMeasure empirical(std::span<const double> roots) {
  if (roots.empty()) throw EmptyInput("empirical measure needs atoms");
  std::vector<double> atoms(roots.begin(), roots.end());
  std::sort(atoms.begin(), atoms.end());
  for (std::size_t i = 1; i < atoms.size(); ++i) {
    if (atoms[i] == atoms[i - 1]) {
      throw DuplicateAtoms("empirical measure atoms must be distinct");
    }
  }
  return EmpiricalMeasure{std::move(atoms)};
}

/// Kolmogorov-Smirnov distance to mu_Q. The supremum over a step CDF versus
/// a continuous one is attained just-left/just-right of an atom, so checking
/// both one-sided gaps at every atom is exact.
inline double ks_distance(const EmpiricalMeasure& em, const DensityModel& dm) {
  const double w = em.weight();
  double d = 0.0;
  for (std::size_t j = 0; j < em.atoms.size(); ++j) {
    const double f = cdf(dm, em.atoms[j]);
    d = std::max(d, std::abs(f - double(j) * w));
    d = std::max(d, std::abs(f - double(j + 1) * w));
  }
  return d;
}

struct HistogramBin {
  double lo, hi;
  std::size_t count;
  double height;  // count / (total atoms * bin width)
};

inline std::vector<HistogramBin> histogram(const EmpiricalMeasure& em,
                                           std::size_t bins, double lo,
                                           double hi) {
  if (bins < 1 || !(lo < hi)) throw BadRange("histogram needs bins>=1, lo<hi");
  const double width = (hi - lo) / double(bins);
  std::vector<HistogramBin> out(bins);
  for (std::size_t b = 0; b < bins; ++b) {
    out[b] = {lo + b * width, lo + (b + 1) * width, 0, 0.0};
  }
  for (double x : em.atoms) {
    if (x < lo || x > hi) continue;
    auto b = std::min<std::size_t>(bins - 1,
                                   std::size_t((x - lo) / width));
    ++out[b].count;
  }
  const double norm = double(em.count()) * width;
  for (auto& b : out) b.height = double(b.count) / norm;
  return out;
}

}  // namespace lamespec
