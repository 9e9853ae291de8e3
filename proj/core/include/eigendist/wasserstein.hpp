#pragma once

#include <optional>

#include "eigendist/markov.hpp"
#include "eigendist/transport.hpp"

namespace eigendist {

/// Index of the unordered pair (x,y), x < y, in lexicographic order.
inline int pair_index(int n, int x, int y) { return x * n - x * (x + 1) / 2 + (y - x - 1); }
inline int pair_count(int n) { return n * (n - 1) / 2; }

/// Image of a pseudo-metric under the p-Wasserstein map, with the
/// per-pair optimal plans optionally retained for coupling extraction.
/// Plans are stored over the full n x n state grid, indexed by
/// pair_index for x < y.
struct WpResult {
  PseudoMetric metric;
  std::optional<std::vector<TransportPlan>> plans;
};

/// W_p(rho)(x,y) = inf over couplings of P^x, P^y of the p-th cost
/// moment, evaluated exactly per unordered pair; the diagonal is zero and
/// symmetry is structural. The output triangle inequality is asserted
/// (it is guaranteed by gluing; a violation beyond metric_tol signals a
/// solver fault and aborts).
WpResult apply_W(const MarkovChain& chain, const PseudoMetric& rho, double p, bool keep_plans = false,
                 const Tolerances& tol = {});

/// Samples random state quadruples and returns the maximal excess of
/// |W_p(rho)^p(x1,y1) - W_p(rho)^p(x2,y2)| over the bound
/// alpha(x1,x2) + alpha(y1,y2). Requires rho bounded by 1 entrywise.
double pair_lipschitz_check(const MarkovChain& chain, const PseudoMetric& rho, double p, int samples,
                            uint64_t seed, const Tolerances& tol = {});

}  // namespace eigendist
