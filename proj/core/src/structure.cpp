#include "eigendist/structure.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <numeric>

#include "eigendist/errors.hpp"

namespace eigendist {

namespace {

constexpr double kLumpTol = 1e-12;
constexpr int kExhaustiveCap = 12;  // Bell(12) ~ 4.2M

std::vector<int> block_of_state(const Partition& partition, int n) {
  std::vector<int> owner(n, -1);
  for (int b = 0; b < partition.block_count(); ++b)
    for (int s : partition.blocks[b]) {
      if (s < 0 || s >= n || owner[s] >= 0) throw ValidationError("partition blocks must be disjoint state sets");
      owner[s] = b;
    }
  for (int s = 0; s < n; ++s)
    if (owner[s] < 0) throw ValidationError("partition must cover all states");
  return owner;
}

Partition from_assignment(const std::vector<int>& owner, int nblocks) {
  Partition p;
  p.blocks.assign(nblocks, {});
  for (int s = 0; s < static_cast<int>(owner.size()); ++s) p.blocks[owner[s]].push_back(s);
  return p;
}

bool lumpable_assignment(const MarkovChain& chain, const std::vector<int>& owner, int nblocks) {
  const int n = chain.n;
  // Signature of x = vector of row sums into each block.
  std::vector<Vec> sig(n, Vec(nblocks, 0.0));
  for (int x = 0; x < n; ++x)
    for (int z = 0; z < n; ++z) sig[x][owner[z]] += chain.P(x, z);
  std::vector<int> rep(nblocks, -1);
  for (int x = 0; x < n; ++x) {
    int b = owner[x];
    if (rep[b] < 0) {
      rep[b] = x;
      continue;
    }
    for (int c = 0; c < nblocks; ++c)
      if (std::abs(sig[x][c] - sig[rep[b]][c]) > kLumpTol) return false;
  }
  return true;
}

/// Coarsest lumpable partition refining the seed: split blocks by their
/// row-sum signatures against the current partition until stable.
std::vector<int> refine_to_lumpable(const MarkovChain& chain, std::vector<int> owner) {
  const int n = chain.n;
  while (true) {
    int nblocks = *std::max_element(owner.begin(), owner.end()) + 1;
    std::map<std::pair<int, std::vector<long long>>, int> keys;
    std::vector<int> next(n);
    for (int x = 0; x < n; ++x) {
      Vec sig(nblocks, 0.0);
      for (int z = 0; z < n; ++z) sig[owner[z]] += chain.P(x, z);
      std::vector<long long> quantized(nblocks);
      for (int c = 0; c < nblocks; ++c) quantized[c] = llround(sig[c] / kLumpTol / 16.0);
      auto key = std::make_pair(owner[x], std::move(quantized));
      auto [it, inserted] = keys.emplace(std::move(key), static_cast<int>(keys.size()));
      next[x] = it->second;
    }
    if (next == owner) return owner;
    // Renumber by first occurrence for determinism.
    std::map<int, int> renum;
    for (int x = 0; x < n; ++x) {
      auto [it, ins] = renum.emplace(next[x], static_cast<int>(renum.size()));
      next[x] = it->second;
    }
    owner = std::move(next);
  }
}

}  // namespace

bool is_lumpable(const MarkovChain& chain, const Partition& partition) {
  std::vector<int> owner = block_of_state(partition, chain.n);
  return lumpable_assignment(chain, owner, partition.block_count());
}

std::vector<Partition> all_lumpable_partitions(const MarkovChain& chain) {
  const int n = chain.n;
  if (n > kExhaustiveCap) throw BudgetExceeded("exhaustive partition enumeration is capped at n = 12");
  std::vector<Partition> found;
  if (n <= 2) return found;  // no nontrivial block counts exist
  // Restricted growth strings with exactly nblocks blocks, coarsest first.
  for (int nblocks = 2; nblocks <= n - 1; ++nblocks) {
    std::vector<int> owner(n, 0);
    std::function<void(int, int)> rec = [&](int s, int used) {
      if (n - s < nblocks - used) return;  // cannot reach the target count
      if (s == n) {
        if (used == nblocks && lumpable_assignment(chain, owner, nblocks))
          found.push_back(from_assignment(owner, nblocks));
        return;
      }
      int limit = std::min(used, nblocks - 1);
      for (int b = 0; b <= limit; ++b) {
        owner[s] = b;
        rec(s + 1, std::max(used, b + 1));
      }
    };
    owner[0] = 0;
    rec(1, 1);
  }
  return found;
}

LumpableSearch find_lumpable_partition(const MarkovChain& chain, bool exhaustive) {
  const int n = chain.n;
  if (exhaustive) {
    if (n > kExhaustiveCap) throw BudgetExceeded("exhaustive partition enumeration is capped at n = 12");
    for (int nblocks = 2; nblocks <= n - 1; ++nblocks) {
      std::optional<Partition> hit;
      std::vector<int> owner(n, 0);
      std::function<void(int, int)> rec = [&](int s, int used) {
        if (hit) return;
        if (n - s < nblocks - used) return;
        if (s == n) {
          if (used == nblocks && lumpable_assignment(chain, owner, nblocks))
            hit = from_assignment(owner, nblocks);
          return;
        }
        int limit = std::min(used, nblocks - 1);
        for (int b = 0; b <= limit; ++b) {
          owner[s] = b;
          rec(s + 1, std::max(used, b + 1));
        }
      };
      owner[0] = 0;
      rec(1, 1);
      if (hit) return {std::move(hit), false};
    }
    return {std::nullopt, true};
  }

  // Heuristic: for every pair start from the two-block partition that
  // isolates the pair and refine to the coarsest stable partition below
  // it; refinement only splits, so the seed must be coarse.
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y) {
      std::vector<int> owner(n, 1);
      owner[x] = owner[y] = 0;
      std::vector<int> stable = refine_to_lumpable(chain, owner);
      int nblocks = *std::max_element(stable.begin(), stable.end()) + 1;
      if (nblocks >= 2 && nblocks <= n - 1 && lumpable_assignment(chain, stable, nblocks))
        return {from_assignment(stable, nblocks), false};
    }
  return {std::nullopt, false};
}

MarkovChain quotient_chain(const MarkovChain& chain, const Partition& partition) {
  std::vector<int> owner = block_of_state(partition, chain.n);
  const int nb = partition.block_count();
  if (!lumpable_assignment(chain, owner, nb)) throw NotLumpable("quotient_chain: partition is not lumpable");
  Mat Q(nb, nb);
  for (int b = 0; b < nb; ++b) {
    int x = partition.blocks[b].front();
    for (int z = 0; z < chain.n; ++z) Q(b, owner[z]) += chain.P(x, z);
    // Row-stochastic up to summation dust; renormalize exactly.
    double s = 0.0;
    for (int c = 0; c < nb; ++c) s += Q(b, c);
    for (int c = 0; c < nb; ++c) Q(b, c) /= s;
  }
  std::vector<std::string> labels(nb);
  for (int b = 0; b < nb; ++b) {
    std::string lab;
    for (int s : partition.blocks[b]) lab += (lab.empty() ? "" : "+") + chain.labels[s];
    labels[b] = lab;
  }
  return validate_chain(Q, std::move(labels));
}

Partition zero_set_partition(const PseudoMetric& rho) {
  const int n = rho.n;
  const double thresh = 1e-10 * rho.max_entry();
  std::vector<int> owner(n, -1);
  Partition p;
  for (int x = 0; x < n; ++x) {
    if (owner[x] >= 0) continue;
    int b = p.block_count();
    p.blocks.push_back({x});
    owner[x] = b;
    for (int y = x + 1; y < n; ++y)
      if (owner[y] < 0 && rho.d(x, y) <= thresh) {
        owner[y] = b;
        p.blocks[b].push_back(y);
      }
  }
  return p;
}

MarkovChain product_chain(const MarkovChain& chainA, const MarkovChain& chainB) {
  const int na = chainA.n, nb = chainB.n;
  Mat P(na * nb, na * nb);
  std::vector<std::string> labels(static_cast<size_t>(na) * nb);
  for (int a = 0; a < na; ++a)
    for (int b = 0; b < nb; ++b) {
      labels[a * nb + b] = chainA.labels[a] + "," + chainB.labels[b];
      for (int a2 = 0; a2 < na; ++a2)
        for (int b2 = 0; b2 < nb; ++b2) P(a * nb + b, a2 * nb + b2) = chainA.P(a, a2) * chainB.P(b, b2);
    }
  return validate_chain(P, std::move(labels));
}

PseudoMetric tensor_metric(const PseudoMetric& rhoX, const PseudoMetric& rhoY, double a, double b, double p) {
  if (a < 0.0 || b < 0.0) throw ParameterRange("tensor_metric: weights must be >= 0");
  if (!(p >= 1.0)) throw ParameterRange("tensor_metric: p must be >= 1");
  const int nx = rhoX.n, ny = rhoY.n;
  Mat d(nx * ny, nx * ny);
  for (int x = 0; x < nx; ++x)
    for (int y = 0; y < ny; ++y)
      for (int u = 0; u < nx; ++u)
        for (int v = 0; v < ny; ++v) {
          double val = a * std::pow(rhoX.d(x, u), p) + b * std::pow(rhoY.d(y, v), p);
          d(x * ny + y, u * ny + v) = std::pow(val, 1.0 / p);
        }
  return PseudoMetric{nx * ny, d};
}

}  // namespace eigendist
