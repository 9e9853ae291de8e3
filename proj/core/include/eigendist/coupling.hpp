#pragma once

#include <cstdint>

#include "eigendist/eigendistance.hpp"

namespace eigendist {

/// Transition kernel on ordered state pairs realizing an eigendistance:
/// marginals are the original kernels, the diagonal is absorbing, and
/// rho^p is an eigenfunction to eigenvalue (1-kappa)^p. Rows are stored
/// sparse; kernel[x*n+y] lists (u*n+v, mass) entries.
struct CouplingOperator {
  int n = 0;
  double kappa = 0.0;
  double p = 1.0;
  PseudoMetric rho;
  std::vector<std::vector<std::pair<int, double>>> kernel;

  const std::vector<std::pair<int, double>>& row(int x, int y) const { return kernel[x * n + y]; }
};

/// Builds the coupling from the per-pair optimal plans of apply_W:
/// kernel(x,y) is the plan for x < y, its transpose for y < x, and the
/// push of P^x onto the diagonal for x = y. Checks marginals, diagonal
/// absorption and the eigenfunction relation; throws
/// EigenrelationViolation with the worst pair on failure.
///
/// A solver plan is one vertex of the optimal face and its support can
/// be too sparse for reachability diagnostics: communication between
/// pairs may hold for some optimal coupling but not the computed one.
/// With max_support each plan is widened to a single optimal plan whose
/// support is the union of all optimal plans (mass is shifted along
/// zero-reduced-cost residual cycles, so optimality is preserved).
CouplingOperator extract_coupling(const MarkovChain& chain, const EigendistanceResult& eig,
                                  const WpResult& wp, const Tolerances& tol = {},
                                  bool max_support = false);

/// Q(x,y)(A) = (P(x,y)(A) + P(y,x)(A^T)) / 2; idempotent, preserves
/// marginals and the eigenfunction relation.
CouplingOperator symmetrize(const CouplingOperator& coupling);

/// Strong connectivity of the reachability graph on unordered
/// off-diagonal pairs (kernel mass > 1e-14, diagonal absorbing and
/// excluded). Irreducible iff a single communicating class covers every
/// off-diagonal pair.
struct IrreducibilityReport {
  bool irreducible = false;
  std::vector<std::vector<std::pair<int, int>>> classes;  // unordered pairs (x < y)
};
IrreducibilityReport coupling_irreducible(const CouplingOperator& coupling);

/// Monte Carlo over the pair chain. mean_rho_p[t] estimates the
/// expectation of rho^p(X_t, Y_t); stderr_rho_p[t] its standard error;
/// final_rho holds rho(X_T, Y_T) per sample. Deterministic given seed
/// (per-sample derived streams), independent of thread count.
struct CoupledSimulation {
  std::vector<double> mean_rho_p;    // length T+1, index by t
  std::vector<double> stderr_rho_p;  // length T+1
  std::vector<double> final_rho;     // length samples
};
CoupledSimulation simulate_coupled(const CouplingOperator& coupling, int x0, int y0, int T, int samples,
                                   uint64_t seed);

}  // namespace eigendist
