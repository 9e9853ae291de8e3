#pragma once

#include <utility>

#include "eigendist/types.hpp"

namespace eigendist {

/// One discrete transportation problem: move mu to nu at the given cost.
struct TransportInstance {
  Vec mu;    // length m, sums to 1
  Vec nu;    // length k, sums to 1
  Mat cost;  // m x k, finite, >= 0
};

/// Optimal basic solution with dual certificate.
struct TransportPlan {
  Mat plan;      // m x k, row sums mu, column sums nu
  double value;  // sum plan .* cost
  Vec u;         // row potentials
  Vec v;         // column potentials
};

/// Exact solve by network simplex on the bipartite transportation graph.
/// Entering arc by Bland's rule (lowest arc index with negative reduced
/// cost), leaving arc by ratio test with lowest-index tie break, initial
/// basis from the northwest-corner rule. Zero-mass atoms are removed
/// before solving and reinserted as zero rows/columns with dual-feasible
/// potentials. Deterministic; throws NumericalFailure only if pivoting
/// exceeds the iteration cap.
TransportPlan solve_transport(const TransportInstance& inst, const Tolerances& tol = {});

/// Returns (max marginal deviation, primal-minus-dual objective gap).
std::pair<double, double> verify_plan(const TransportPlan& plan, const TransportInstance& inst);

}  // namespace eigendist
