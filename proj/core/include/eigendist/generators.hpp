#pragma once

#include <cstdint>

#include "eigendist/markov.hpp"

namespace eigendist {
namespace gen {

/// L-state cyclic walk: stay with probability 1-2q, step to either
/// neighbor with probability q.
MarkovChain lazy_torus(int L, double q);

/// Sine metric on the torus, an eigendistance when the stay probability
/// r = 1-2q exceeds q.
PseudoMetric rho_L(int L);
double kappa_L(int L, double r);

/// Parity pseudo-metric 1_{x-y odd} on an even torus and its curvature.
PseudoMetric parity_metric(int L);
double kappa_parity(double q, double r);

/// n independent spins, each flipping with probability q per step
/// (2^n states, bit i of the state index is spin i).
MarkovChain spin_flip(int n, double q);

/// Weighted Hamming pseudo-metric sum_i a(i) 1_{x(i) != y(i)} on 2^n
/// states; an eigendistance of spin_flip with curvature 2q.
PseudoMetric weighted_hamming(const Vec& a);

/// Birth-death walk on {0..N} with absorbing endpoints; interior states
/// move +-1 with probability q each and stay with probability 1-2q.
MarkovChain gamblers_ruin(int N, double q);

/// h(x) = P_x(hit A1 before A2), solved exactly from the linear system.
/// Throws UnreachableAbsorber if some state reaches neither set.
Vec harmonic_h(const MarkovChain& chain, const std::vector<int>& A1, const std::vector<int>& A2);

/// Deterministic random chain with diagonal >= min_selfloop; the
/// residual row mass is split Dirichlet-style from the seed.
MarkovChain random_lazy_chain(int n, uint64_t seed, double min_selfloop);

/// Random pseudo-metric: shortest-path closure of symmetric uniform
/// weights, normalized to max entry 1. Deterministic from the seed.
PseudoMetric random_metric(int n, uint64_t seed);

}  // namespace gen
}  // namespace eigendist
