#pragma once

#include <optional>

#include "eigendist/wasserstein.hpp"

namespace eigendist {

/// Outcome of a fixed-point computation: a pseudo-metric rho with
/// W_p(rho) = (1-kappa) rho up to the reported residual.
struct EigendistanceResult {
  PseudoMetric rho;
  double kappa = 0.0;
  double p = 1.0;
  double residual = 0.0;      // ||W_p(rho) - (1-kappa) rho||_inf
  int iterations = 0;
  bool converged = false;
  std::vector<double> trace;  // per-iteration sup-norm changes
};

/// Scale of rho relative to the reference: the supremum of entrywise
/// ratios over off-diagonal pairs with positive reference entry.
/// Throws DegenerateInput if rho vanishes identically there.
double lambda_scale(const PseudoMetric& rho, const PseudoMetric& reference);

/// Normalized fixed-point iteration rho -> W_p(rho / lambda(rho)) until
/// the sup-norm change drops below fp_tol or max_iter is hit. Requires
/// init <= reference entrywise and W_p(reference) <= reference (the
/// indicator metric always qualifies as reference). The returned rho is
/// normalized to max entry 1; kappa and residual come from
/// verify_eigendistance. Non-convergence is reported, not thrown.
EigendistanceResult iterate_F(const MarkovChain& chain, double p, const PseudoMetric& init,
                              const PseudoMetric& reference, const Tolerances& tol = {});
EigendistanceResult iterate_F(const MarkovChain& chain, double p, const PseudoMetric& init,
                              const Tolerances& tol = {});

/// Plain iteration rho -> W_p(rho) from the indicator metric. The
/// sequence is entrywise non-increasing (asserted each step) and its
/// limit is a curvature-0 fixed point, possibly identically zero. The
/// result is returned in the iteration's own scale, not normalized.
EigendistanceResult iterate_maximal(const MarkovChain& chain, double p, const Tolerances& tol = {});

/// Fixed point bracketed by a non-negative eigenfunction h of P with
/// P h = lambda_eig h: runs the normalized iteration with reference
/// rho2 = 1_{x != y} (h(x)+h(y))^{1/p} and asserts every iterate stays
/// above rho1 = |h(x)-h(y)|^{1/p} - fp_tol. The result keeps the
/// bracket's natural scale.
EigendistanceResult sandwich_from_eigenfunction(const MarkovChain& chain, const Vec& h, double lambda_eig,
                                                double p, const Tolerances& tol = {});

/// kappa_hat = 1 - max ratio of W_p(rho)/rho over pairs with rho > 0,
/// residual = ||W_p(rho) - (1-kappa_hat) rho||_inf. Throws
/// ZeroSetViolation if W_p(rho) exceeds ot_tol somewhere rho vanishes.
struct VerifyResult {
  double kappa_hat;
  double residual;
};
VerifyResult verify_eigendistance(const MarkovChain& chain, const PseudoMetric& rho, double p,
                                  const Tolerances& tol = {});

/// Entrywise p-th root of a converged p=1 result: rho^{1/p} with
/// curvature 1 - (1-kappa)^{1/p}, re-verified at exponent p.
EigendistanceResult p_root_transfer(const MarkovChain& chain, const EigendistanceResult& result_p1, double p,
                                    const Tolerances& tol = {});

}  // namespace eigendist
