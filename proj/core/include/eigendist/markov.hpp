#pragma once

#include "eigendist/types.hpp"

namespace eigendist {

/// Row-stochastic transition matrix with state labels. Row x is the
/// one-step law from state x. Immutable after construction.
struct MarkovChain {
  int n = 0;
  std::vector<std::string> labels;
  Mat P;
};

/// Symmetric nonnegative matrix with zero diagonal satisfying the
/// triangle inequality up to a relative slack. Zero off-diagonal
/// entries are allowed (pseudo-metric).
struct PseudoMetric {
  int n = 0;
  Mat d;

  double max_entry() const { return d.max_abs(); }
};

struct LazinessReport {
  bool holds = false;      // min self-loop strictly above 1/2
  double min_selfloop = 0.0;
};

/// Checks stochasticity and builds a chain. Throws NegativeEntry or
/// RowSumViolation (with the offending row and deviation).
MarkovChain validate_chain(const Mat& matrix, std::vector<std::string> labels = {});

/// Advisory check of the laziness condition min_x P(x,x) > 1/2, which
/// guarantees the non-degeneracy assumption for fixed-point iterations.
/// Never throws; callers warn and proceed when it fails.
LazinessReport check_laziness(const MarkovChain& chain);

/// Checks symmetry, zero diagonal and the triangle inequality
/// (slack tol.metric_tol * max entry, so scaled metrics validate alike).
/// Throws AsymmetryError, NonzeroDiagonal or TriangleViolation with a
/// witness triple.
PseudoMetric validate_metric(const Mat& matrix, const Tolerances& tol = {});

/// alpha(x,y) = 1 - sum_z min(P(x,z), P(y,z)): one minus the overlap of
/// the one-step laws. Equals the image of the discrete metric under the
/// 1-Wasserstein map.
PseudoMetric alpha_metric(const MarkovChain& chain);

/// The discrete metric 1_{x != y} on n states.
PseudoMetric indicator_metric(int n);

}  // namespace eigendist
