#pragma once

#include <cstdint>

#include "eigendist/markov.hpp"

namespace eigendist {

/// Moment inputs for the exponential-moment bound, all measured in the
/// eigendistance rho at p = 1.
struct ConcentrationParams {
  double J = 0.0;        // maximal one-step jump in rho
  Vec sigma;             // sigma[n] for n = 0..n_max, entries below 2 unused
  double kappa = 0.0;
  double p = 1.0;
  double lip_norm = 0.0; // ||f||_{rho-Lip} of the attached function
};

/// max |f(x)-f(y)| / rho(x,y) over pairs with rho > 0; +infinity when f
/// separates a zero-distance pair.
double lipschitz_norm(const Vec& f, const PseudoMetric& rho);

/// ||P f||_{rho-Lip} - (1-kappa) ||f||_{rho-Lip}; <= 0 up to rounding
/// when (rho, kappa) is a p=1 eigendistance.
double contraction_check(const MarkovChain& chain, const PseudoMetric& rho, double kappa, const Vec& f);

/// J_rho: max over x of max rho(x,y) over one-step-reachable y.
double jump_bound(const MarkovChain& chain, const PseudoMetric& rho);

/// sigma^(n) = max_x sum_z P(x,z) (sum_z' rho(z,z') P(x,z'))^n for
/// n = 2..n_max, as exact finite sums. Returned vector has size
/// n_max + 1 with entries 0 and 1 unused.
Vec sigma_moments(const MarkovChain& chain, const PseudoMetric& rho, int n_max);

/// Certified upper bound on the log-moment of f(X_T) - E_x f(X_T):
/// partial series through n_max plus a tail majorant from
/// sigma^(n) <= (2J)^n. Linear in T when kappa = 0. Throws DivergentTail
/// when the majorant exceeds 1e3.
double exp_moment_bound(const ConcentrationParams& params, int T);

/// exp(-r^2/2 / (alpha + r/3)): the sub-exponential tail produced by the
/// exponential Markov inequality from a Bernstein-type moment bound on
/// the scale beta.
double bernstein_tail(double alpha, double beta, double r);

/// Tail bound on (f(X_T) - E_x f(X_T)) / (||f|| J) (kappa > 0) or
/// / (||f|| J sqrt(T)) (kappa = 0).
double function_tail_bound(double lip_norm, double J, double kappa, int T, double r);

/// Tail bound on |rho(X_T,Y_T) - (1-kappa)^T rho(x,y)| / J under the
/// realizing coupling.
double distance_tail_bound(double J, double kappa, int T, double r);

/// Monte Carlo validation harness: samples the chain from x0, compares
/// the empirical exceedance of the normalized deviation of f(X_T)
/// against the analytic bound at each grid point r. The centering
/// E_x f(X_T) is computed exactly via matrix-vector products.
struct TailReport {
  Vec r;
  Vec empirical;
  Vec bound;
  Vec mc_stderr;
};
TailReport simulate_function_tail(const MarkovChain& chain, const Vec& f, const PseudoMetric& rho,
                                  double kappa, int x0, int T, int samples, uint64_t seed,
                                  const Vec& r_grid);

}  // namespace eigendist
