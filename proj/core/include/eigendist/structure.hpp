#pragma once

#include <optional>

#include "eigendist/markov.hpp"

namespace eigendist {

/// Disjoint nonempty state blocks covering all states.
struct Partition {
  std::vector<std::vector<int>> blocks;

  int block_count() const { return static_cast<int>(blocks.size()); }
  bool trivial(int n) const { return block_count() <= 1 || block_count() >= n; }
};

/// Strong lumpability: within every block, the row sums into each block
/// agree across members (within 1e-12). For finite chains this is
/// exactly the condition for the block map to preserve the Markov
/// structure.
bool is_lumpable(const MarkovChain& chain, const Partition& partition);

struct LumpableSearch {
  std::optional<Partition> partition;  // a nontrivial lumpable partition, if found
  bool certified = false;              // true when "none" exhaustively certifies irreducibility
};

/// Exhaustive search (n <= 12) over all partitions with 2..n-1 blocks in
/// coarsest-first order; an empty result then certifies algebraic
/// irreducibility. For larger n a pair-seeded refinement heuristic runs
/// and a miss certifies nothing. Throws BudgetExceeded when exhaustive
/// mode is requested beyond n = 12.
LumpableSearch find_lumpable_partition(const MarkovChain& chain, bool exhaustive = true);

/// All nontrivial lumpable partitions, exhaustively (n <= 12 only).
std::vector<Partition> all_lumpable_partitions(const MarkovChain& chain);

/// Q(B, B') = sum over z in B' of P(x, z) for any representative x of B.
/// Throws NotLumpable if the partition is not lumpable.
MarkovChain quotient_chain(const MarkovChain& chain, const Partition& partition);

/// Equivalence classes of { rho <= 1e-10 * max entry }; transitivity is
/// guaranteed by the triangle inequality.
Partition zero_set_partition(const PseudoMetric& rho);

/// Independent product: states are ordered pairs (a, b) indexed
/// a * nB + b, transition probabilities multiply.
MarkovChain product_chain(const MarkovChain& chainA, const MarkovChain& chainB);

/// rho((x,y),(u,v)) = (a rhoX(x,u)^p + b rhoY(y,v)^p)^{1/p} on the
/// product state space.
PseudoMetric tensor_metric(const PseudoMetric& rhoX, const PseudoMetric& rhoY, double a, double b, double p);

}  // namespace eigendist
