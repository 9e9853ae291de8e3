#include "eigendist/markov.hpp"

#include <cmath>
#include <sstream>

#include "eigendist/errors.hpp"

namespace eigendist {

namespace {
constexpr double kRowSumTol = 1e-12;
}

MarkovChain validate_chain(const Mat& matrix, std::vector<std::string> labels) {
  if (!matrix.square() || matrix.rows < 1) throw ValidationError("transition matrix must be square, n >= 1");
  const int n = matrix.rows;
  for (int i = 0; i < n; ++i) {
    double sum = 0.0;
    for (int j = 0; j < n; ++j) {
      double p = matrix(i, j);
      if (p < 0.0 || p > 1.0 || !std::isfinite(p)) {
        std::ostringstream os;
        os << "entry (" << i << "," << j << ") = " << p << " outside [0,1]";
        throw NegativeEntry(os.str());
      }
      sum += p;
    }
    if (std::abs(sum - 1.0) > kRowSumTol) {
      std::ostringstream os;
      os << "row " << i << " sums to " << sum << " (deviation " << sum - 1.0 << ")";
      throw RowSumViolation(os.str());
    }
  }
  if (labels.empty()) {
    labels.resize(n);
    for (int i = 0; i < n; ++i) labels[i] = std::to_string(i);
  }
  if (static_cast<int>(labels.size()) != n) throw ValidationError("label count does not match state count");
  return MarkovChain{n, std::move(labels), matrix};
}

LazinessReport check_laziness(const MarkovChain& chain) {
  double m = 1.0;
  for (int i = 0; i < chain.n; ++i) m = std::min(m, chain.P(i, i));
  return LazinessReport{m > 0.5, m};
}

PseudoMetric validate_metric(const Mat& matrix, const Tolerances& tol) {
  if (!matrix.square() || matrix.rows < 1) throw ValidationError("metric matrix must be square, n >= 1");
  const int n = matrix.rows;
  for (int i = 0; i < n; ++i) {
    if (std::abs(matrix(i, i)) > 0.0) {
      std::ostringstream os;
      os << "d(" << i << "," << i << ") = " << matrix(i, i) << " != 0";
      throw NonzeroDiagonal(os.str());
    }
    for (int j = 0; j < n; ++j) {
      double v = matrix(i, j);
      if (v < 0.0 || !std::isfinite(v)) throw ValidationError("metric entries must be finite and >= 0");
      if (std::abs(v - matrix(j, i)) > 0.0) {
        std::ostringstream os;
        os << "d(" << i << "," << j << ") != d(" << j << "," << i << ")";
        throw AsymmetryError(os.str());
      }
    }
  }
  const double slack = tol.metric_tol * matrix.max_abs();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (matrix(i, j) > matrix(i, k) + matrix(k, j) + slack) {
          std::ostringstream os;
          os << "triangle violation at (" << i << "," << j << "," << k << "): " << matrix(i, j) << " > "
             << matrix(i, k) << " + " << matrix(k, j);
          throw TriangleViolation(os.str());
        }
  return PseudoMetric{n, matrix};
}

PseudoMetric alpha_metric(const MarkovChain& chain) {
  const int n = chain.n;
  Mat d(n, n);
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y) {
      double overlap = 0.0;
      for (int z = 0; z < n; ++z) overlap += std::min(chain.P(x, z), chain.P(y, z));
      double v = std::max(0.0, 1.0 - overlap);
      d(x, y) = d(y, x) = v;
    }
  return PseudoMetric{n, d};
}

PseudoMetric indicator_metric(int n) {
  Mat d(n, n, 1.0);
  for (int i = 0; i < n; ++i) d(i, i) = 0.0;
  return PseudoMetric{n, d};
}

}  // namespace eigendist
