#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

namespace eigendist {

using Vec = std::vector<double>;

/// Dense row-major matrix. State spaces here are small (n <= a few hundred),
/// so a plain contiguous buffer beats anything fancier.
struct Mat {
  int rows = 0;
  int cols = 0;
  std::vector<double> a;

  Mat() = default;
  Mat(int r, int c, double fill = 0.0) : rows(r), cols(c), a(static_cast<size_t>(r) * c, fill) {}

  double& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  double operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

  bool square() const { return rows == cols; }

  double max_abs() const {
    double m = 0.0;
    for (double x : a) m = std::max(m, x < 0 ? -x : x);
    return m;
  }

  friend bool operator==(const Mat&, const Mat&) = default;
};

inline double sup_dist(const Mat& x, const Mat& y) {
  double m = 0.0;
  for (size_t i = 0; i < x.a.size(); ++i) {
    double d = x.a[i] - y.a[i];
    m = std::max(m, d < 0 ? -d : d);
  }
  return m;
}

/// Numerical knobs shared across the library. All thresholds strictly
/// positive; defaults match the values the test suite is pinned to.
struct Tolerances {
  double metric_tol = 1e-9;  // relative triangle-inequality slack
  double fp_tol = 1e-11;     // fixed-point sup-norm change threshold
  double ot_tol = 1e-10;     // transport duality-gap / marginal threshold
  int max_iter = 10000;
};

}  // namespace eigendist
