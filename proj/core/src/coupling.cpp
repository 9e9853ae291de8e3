#include "eigendist/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "eigendist/errors.hpp"
#include "eigendist/parallel.hpp"
#include "eigendist/rng.hpp"

namespace eigendist {

namespace {

constexpr double kReachThreshold = 1e-14;

void check_invariants(const CouplingOperator& op, const MarkovChain& chain, const Tolerances& tol) {
  const int n = op.n;
  const double one_minus_kappa_p = std::pow(1.0 - op.kappa, op.p);
  double worst_rel = 0.0;
  int worst_x = -1, worst_y = -1;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      Vec first(n, 0.0), second(n, 0.0);
      double rho_p_mean = 0.0;
      for (const auto& [uv, mass] : op.row(x, y)) {
        int u = uv / n, v = uv % n;
        if (x == y && u != v) throw EigenrelationViolation("diagonal row leaks off the diagonal");
        first[u] += mass;
        second[v] += mass;
        rho_p_mean += mass * std::pow(op.rho.d(u, v), op.p);
      }
      for (int z = 0; z < n; ++z) {
        if (std::abs(first[z] - chain.P(x, z)) > tol.ot_tol || std::abs(second[z] - chain.P(y, z)) > tol.ot_tol) {
          std::ostringstream os;
          os << "coupling marginal mismatch at row (" << x << "," << y << "), state " << z;
          throw EigenrelationViolation(os.str());
        }
      }
      double target = one_minus_kappa_p * std::pow(op.rho.d(x, y), op.p);
      double err = std::abs(rho_p_mean - target);
      if (err > worst_rel) {
        worst_rel = err;
        worst_x = x;
        worst_y = y;
      }
    }
  if (worst_rel > tol.fp_tol) {
    std::ostringstream os;
    os << "eigenfunction relation misses by " << worst_rel << " at pair (" << worst_x << "," << worst_y << ")";
    throw EigenrelationViolation(os.str());
  }
}

}  // namespace

namespace {

// Grows the support of an optimal plan to every arc usable by some
// optimal plan, staying optimal throughout. An arc is usable iff it has
// zero reduced cost and the residual graph of the current plan admits a
// cycle through it; shifting half the bottleneck mass along that cycle
// keeps feasibility, keeps cost (all touched arcs are admissible) and
// makes the arc positive.
void widen_to_optimal_face(Mat& plan, const Vec& du, const Vec& dv, const Mat& cost) {
  const int n = plan.rows;
  const double adm_eps = 1e-9 * (1.0 + cost.max_abs());
  const double mass_eps = 1e-13;
  auto admissible = [&](int u, int v) { return std::abs(cost(u, v) - du[u] - dv[v]) <= adm_eps; };
  bool grew = true;
  while (grew) {
    grew = false;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        if (!admissible(a, b) || plan(a, b) > mass_eps) continue;
        // residual BFS from column b to row a; nodes 0..n-1 rows,
        // n..2n-1 columns, parent arc stored per node
        std::vector<int> parent(2 * n, -2);
        std::vector<int> queue{n + b};
        parent[n + b] = -1;
        while (!queue.empty() && parent[a] == -2) {
          std::vector<int> next;
          for (int node : queue) {
            if (node < n) {
              for (int v = 0; v < n; ++v)
                if (parent[n + v] == -2 && admissible(node, v)) {
                  parent[n + v] = node;
                  next.push_back(n + v);
                }
            } else {
              int v = node - n;
              for (int u = 0; u < n; ++u)
                if (parent[u] == -2 && plan(u, v) > mass_eps) {
                  parent[u] = node;
                  next.push_back(u);
                }
            }
          }
          queue = std::move(next);
        }
        if (parent[a] == -2) continue;
        double delta = std::numeric_limits<double>::infinity();
        for (int node = a; parent[node] != -1; node = parent[node])
          if (node < n) delta = std::min(delta, plan(node, parent[node] - n));
        double eps = delta / 2.0;
        plan(a, b) += eps;
        for (int node = a; parent[node] != -1; node = parent[node]) {
          if (node < n)
            plan(node, parent[node] - n) -= eps;  // backward arc of the cycle
          else
            plan(parent[node], node - n) += eps;
        }
        grew = true;
      }
  }
}

}  // namespace

CouplingOperator extract_coupling(const MarkovChain& chain, const EigendistanceResult& eig,
                                  const WpResult& wp, const Tolerances& tol, bool max_support) {
  if (!eig.converged) throw ValidationError("extract_coupling: eigendistance did not converge");
  if (!wp.plans) throw ValidationError("extract_coupling: apply_W was run without keep_plans");
  const int n = chain.n;
  CouplingOperator op;
  op.n = n;
  op.kappa = eig.kappa;
  op.p = eig.p;
  op.rho = eig.rho;
  op.kernel.assign(static_cast<size_t>(n) * n, {});

  for (int x = 0; x < n; ++x) {
    // Diagonal rows: push P^x onto the diagonal.
    auto& diag = op.kernel[x * n + x];
    for (int z = 0; z < n; ++z)
      if (chain.P(x, z) > 0.0) diag.emplace_back(z * n + z, chain.P(x, z));
    for (int y = x + 1; y < n; ++y) {
      const TransportPlan& plan = (*wp.plans)[pair_index(n, x, y)];
      Mat mass = plan.plan;
      if (max_support) {
        Mat cost(n, n);
        for (int u = 0; u < n; ++u)
          for (int v = 0; v < n; ++v) cost(u, v) = std::pow(eig.rho.d(u, v), eig.p);
        widen_to_optimal_face(mass, plan.u, plan.v, cost);
      }
      auto& fwd = op.kernel[x * n + y];
      auto& bwd = op.kernel[y * n + x];
      for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
          if (mass(u, v) > 0.0) {
            fwd.emplace_back(u * n + v, mass(u, v));
            bwd.emplace_back(v * n + u, mass(u, v));
          }
      std::sort(bwd.begin(), bwd.end());
    }
  }
  // the relation can only hold as well as the fixed point itself, so
  // widen the check by the residual of the supplied eigendistance
  Tolerances eff = tol;
  eff.fp_tol = std::max(tol.fp_tol, 100.0 * eig.residual);
  check_invariants(op, chain, eff);
  return op;
}

CouplingOperator symmetrize(const CouplingOperator& coupling) {
  const int n = coupling.n;
  CouplingOperator out = coupling;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      std::map<int, double> row;
      for (const auto& [uv, mass] : coupling.row(x, y)) row[uv] += 0.5 * mass;
      for (const auto& [uv, mass] : coupling.row(y, x)) {
        int u = uv / n, v = uv % n;
        row[v * n + u] += 0.5 * mass;
      }
      auto& dst = out.kernel[x * n + y];
      dst.clear();
      for (const auto& [uv, mass] : row)
        if (mass > 0.0) dst.emplace_back(uv, mass);
    }
  return out;
}

IrreducibilityReport coupling_irreducible(const CouplingOperator& coupling) {
  const int n = coupling.n;
  const int pairs = pair_count(n);
  // Directed reachability graph on unordered off-diagonal pairs.
  std::vector<std::vector<int>> adj(pairs);
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y) {
      auto& edges = adj[pair_index(n, x, y)];
      for (const auto& [uv, mass] : coupling.row(x, y)) {
        if (mass <= kReachThreshold) continue;
        int u = uv / n, v = uv % n;
        if (u == v) continue;  // diagonal is absorbing
        edges.push_back(pair_index(n, std::min(u, v), std::max(u, v)));
      }
      std::sort(edges.begin(), edges.end());
      edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    }

  // Kosaraju: strongly connected classes of the pair graph.
  std::vector<std::vector<int>> radj(pairs);
  for (int a = 0; a < pairs; ++a)
    for (int b : adj[a]) radj[b].push_back(a);
  std::vector<int> order;
  std::vector<char> seen(pairs, 0);
  for (int s = 0; s < pairs; ++s) {
    if (seen[s]) continue;
    // Iterative post-order DFS.
    std::vector<std::pair<int, size_t>> stack{{s, 0}};
    seen[s] = 1;
    while (!stack.empty()) {
      auto& [node, idx] = stack.back();
      if (idx < adj[node].size()) {
        int next = adj[node][idx++];
        if (!seen[next]) {
          seen[next] = 1;
          stack.emplace_back(next, 0);
        }
      } else {
        order.push_back(node);
        stack.pop_back();
      }
    }
  }
  std::vector<int> comp(pairs, -1);
  int ncomp = 0;
  for (int s = static_cast<int>(order.size()) - 1; s >= 0; --s) {
    int root = order[s];
    if (comp[root] >= 0) continue;
    std::vector<int> stack{root};
    comp[root] = ncomp;
    while (!stack.empty()) {
      int node = stack.back();
      stack.pop_back();
      for (int prev : radj[node])
        if (comp[prev] < 0) {
          comp[prev] = ncomp;
          stack.push_back(prev);
        }
    }
    ++ncomp;
  }

  IrreducibilityReport report;
  report.classes.assign(ncomp, {});
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y) report.classes[comp[pair_index(n, x, y)]].emplace_back(x, y);
  report.irreducible = (ncomp == 1 && pairs >= 1);
  return report;
}

CoupledSimulation simulate_coupled(const CouplingOperator& coupling, int x0, int y0, int T, int samples,
                                   uint64_t seed) {
  if (T < 1 || samples < 1) throw ParameterRange("simulate_coupled: T and samples must be >= 1");
  const int n = coupling.n;
  if (x0 < 0 || x0 >= n || y0 < 0 || y0 >= n) throw ParameterRange("simulate_coupled: start state out of range");

  // Per-row inverse-CDF tables.
  std::vector<std::vector<double>> cdf(coupling.kernel.size());
  for (size_t r = 0; r < coupling.kernel.size(); ++r) {
    double acc = 0.0;
    cdf[r].reserve(coupling.kernel[r].size());
    for (const auto& [uv, mass] : coupling.kernel[r]) cdf[r].push_back(acc += mass);
  }

  std::vector<Vec> rho_p(samples);  // per-sample trajectory of rho^p
  CoupledSimulation sim;
  sim.final_rho.assign(samples, 0.0);
  parallel_for(samples, [&](int s) {
    SplitMix64 rng = derived_rng(seed, static_cast<uint64_t>(s));
    int state = x0 * n + y0;
    Vec traj(T + 1);
    traj[0] = std::pow(coupling.rho.d(x0, y0), coupling.p);
    for (int t = 1; t <= T; ++t) {
      const auto& row = coupling.kernel[state];
      const auto& c = cdf[state];
      double u = rng.uniform() * (c.empty() ? 1.0 : c.back());
      size_t idx = std::lower_bound(c.begin(), c.end(), u) - c.begin();
      if (idx >= row.size()) idx = row.empty() ? 0 : row.size() - 1;
      if (!row.empty()) state = row[idx].first;
      traj[t] = std::pow(coupling.rho.d(state / n, state % n), coupling.p);
    }
    sim.final_rho[s] = coupling.rho.d(state / n, state % n);
    rho_p[s] = std::move(traj);
  });

  sim.mean_rho_p.assign(T + 1, 0.0);
  sim.stderr_rho_p.assign(T + 1, 0.0);
  for (int t = 0; t <= T; ++t) {
    double mean = 0.0;
    for (int s = 0; s < samples; ++s) mean += rho_p[s][t];
    mean /= samples;
    double var = 0.0;
    for (int s = 0; s < samples; ++s) var += (rho_p[s][t] - mean) * (rho_p[s][t] - mean);
    var /= std::max(1, samples - 1);
    sim.mean_rho_p[t] = mean;
    sim.stderr_rho_p[t] = std::sqrt(var / samples);
  }
  return sim;
}

}  // namespace eigendist
