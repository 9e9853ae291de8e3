#include "eigendist/transport.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "eigendist/errors.hpp"

namespace eigendist {

namespace {

constexpr double kMassTol = 1e-12;

struct Arc {
  int i, j;      // row node i, column node j
  double flow;
};

/// Transportation simplex on the reduced (positive-mass) instance.
/// Node indexing: rows 0..m-1, columns m..m+k-1.
class Simplex {
 public:
  Simplex(const Vec& mu, const Vec& nu, const Mat& cost, double eps)
      : m_(static_cast<int>(mu.size())), k_(static_cast<int>(nu.size())), cost_(cost), eps_(eps) {
    northwest_corner(mu, nu);
  }

  void run(int pivot_cap) {
    for (int it = 0; it < pivot_cap; ++it) {
      compute_potentials();
      int enter = entering_arc();
      if (enter < 0) return;  // optimal
      pivot(enter);
    }
    throw NumericalFailure("transport simplex exceeded pivot cap (degenerate cycling?)");
  }

  const std::vector<Arc>& basis() const { return basis_; }
  const Vec& u() const { return u_; }
  const Vec& v() const { return v_; }

 private:
  void northwest_corner(Vec mu, Vec nu) {
    basis_.reserve(m_ + k_ - 1);
    int i = 0, j = 0;
    while (true) {
      double f = std::max(0.0, std::min(mu[i], nu[j]));
      basis_.push_back({i, j, f});
      mu[i] -= f;
      nu[j] -= f;
      if (i == m_ - 1 && j == k_ - 1) break;
      // Index-driven advance: exactly m+k-1 arcs forming a connected
      // chain, regardless of rounding dust in the residual masses.
      if (i == m_ - 1)
        ++j;
      else if (j == k_ - 1)
        ++i;
      else if (mu[i] <= nu[j])
        ++i;
      else
        ++j;
    }
  }

  void compute_potentials() {
    const int nodes = m_ + k_;
    adj_.assign(nodes, {});
    for (int b = 0; b < static_cast<int>(basis_.size()); ++b) {
      adj_[basis_[b].i].push_back(b);
      adj_[m_ + basis_[b].j].push_back(b);
    }
    u_.assign(m_, 0.0);
    v_.assign(k_, 0.0);
    std::vector<char> seen(nodes, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    while (!stack.empty()) {
      int node = stack.back();
      stack.pop_back();
      for (int b : adj_[node]) {
        const Arc& arc = basis_[b];
        int other = (node == arc.i) ? m_ + arc.j : arc.i;
        if (seen[other]) continue;
        seen[other] = 1;
        if (other >= m_)
          v_[other - m_] = cost_(arc.i, arc.j) - u_[arc.i];
        else
          u_[other] = cost_(arc.i, arc.j) - v_[arc.j];
        stack.push_back(other);
      }
    }
  }

  int entering_arc() const {
    for (int i = 0; i < m_; ++i)
      for (int j = 0; j < k_; ++j) {
        if (in_basis(i, j)) continue;
        if (cost_(i, j) - u_[i] - v_[j] < -eps_) return i * k_ + j;
      }
    return -1;
  }

  bool in_basis(int i, int j) const {
    for (const Arc& a : basis_)
      if (a.i == i && a.j == j) return true;
    return false;
  }

  void pivot(int enter) {
    const int ei = enter / k_;
    const int ej = enter % k_;
    // Unique tree path from column node ej back to row node ei.
    const int nodes = m_ + k_;
    std::vector<int> parent_arc(nodes, -1), parent_node(nodes, -1);
    std::vector<char> seen(nodes, 0);
    std::vector<int> stack{m_ + ej};
    seen[m_ + ej] = 1;
    while (!stack.empty()) {
      int node = stack.back();
      stack.pop_back();
      if (node == ei) break;
      for (int b : adj_[node]) {
        const Arc& arc = basis_[b];
        int other = (node == arc.i) ? m_ + arc.j : arc.i;
        if (seen[other]) continue;
        seen[other] = 1;
        parent_arc[other] = b;
        parent_node[other] = node;
        stack.push_back(other);
      }
    }
    // Walk ei -> ej along the path; signs alternate starting with -.
    std::vector<int> cycle;  // basis indices, in path order from ei side
    for (int node = ei; node != m_ + ej; node = parent_node[node]) cycle.push_back(parent_arc[node]);
    double delta = std::numeric_limits<double>::infinity();
    int leave = -1, leave_key = -1;
    for (size_t s = 0; s < cycle.size(); ++s) {
      if (s % 2 != 0) continue;  // only the minus arcs limit the step
      const Arc& a = basis_[cycle[s]];
      int key = a.i * k_ + a.j;
      if (a.flow < delta - 1e-15 || (std::abs(a.flow - delta) <= 1e-15 && (leave < 0 || key < leave_key))) {
        if (a.flow < delta) delta = a.flow;
        leave = cycle[s];
        leave_key = key;
      }
    }
    for (size_t s = 0; s < cycle.size(); ++s) basis_[cycle[s]].flow += (s % 2 == 0) ? -delta : delta;
    basis_[leave] = Arc{ei, ej, delta};
  }

  int m_, k_;
  const Mat& cost_;
  double eps_;
  std::vector<Arc> basis_;
  std::vector<std::vector<int>> adj_;
  Vec u_, v_;
};

}  // namespace

TransportPlan solve_transport(const TransportInstance& inst, const Tolerances& tol) {
  const int m = static_cast<int>(inst.mu.size());
  const int k = static_cast<int>(inst.nu.size());
  if (inst.cost.rows != m || inst.cost.cols != k) throw ValidationError("cost shape does not match marginals");
  double smu = 0.0, snu = 0.0;
  for (double x : inst.mu) {
    if (x < 0.0) throw ValidationError("mu has a negative atom");
    smu += x;
  }
  for (double x : inst.nu) {
    if (x < 0.0) throw ValidationError("nu has a negative atom");
    snu += x;
  }
  if (std::abs(smu - 1.0) > kMassTol || std::abs(snu - 1.0) > kMassTol)
    throw ValidationError("marginals must sum to 1");
  for (double c : inst.cost.a)
    if (!(c >= 0.0) || !std::isfinite(c)) throw ValidationError("cost entries must be finite and >= 0");

  // Reduce to strictly positive atoms.
  std::vector<int> rows, cols;
  for (int i = 0; i < m; ++i)
    if (inst.mu[i] > 0.0) rows.push_back(i);
  for (int j = 0; j < k; ++j)
    if (inst.nu[j] > 0.0) cols.push_back(j);
  const int rm = static_cast<int>(rows.size());
  const int rk = static_cast<int>(cols.size());
  Vec rmu(rm), rnu(rk);
  Mat rcost(rm, rk);
  for (int i = 0; i < rm; ++i) rmu[i] = inst.mu[rows[i]];
  for (int j = 0; j < rk; ++j) rnu[j] = inst.nu[cols[j]];
  for (int i = 0; i < rm; ++i)
    for (int j = 0; j < rk; ++j) rcost(i, j) = inst.cost(rows[i], cols[j]);

  const double eps = 1e-13 * (1.0 + rcost.max_abs());
  Simplex simplex(rmu, rnu, rcost, eps);
  simplex.run(std::max(100000, 100 * rm * rk));

  TransportPlan out;
  out.plan = Mat(m, k);
  out.u.assign(m, 0.0);
  out.v.assign(k, 0.0);
  out.value = 0.0;
  for (const Arc& a : simplex.basis()) {
    out.plan(rows[a.i], cols[a.j]) = a.flow;
    out.value += a.flow * rcost(a.i, a.j);
  }
  for (int i = 0; i < rm; ++i) out.u[rows[i]] = simplex.u()[i];
  for (int j = 0; j < rk; ++j) out.v[cols[j]] = simplex.v()[j];

  // Dual-feasible potentials for the pruned atoms: columns first from the
  // kept rows, then rows against every column.
  std::vector<char> row_kept(m, 0), col_kept(k, 0);
  for (int i : rows) row_kept[i] = 1;
  for (int j : cols) col_kept[j] = 1;
  for (int j = 0; j < k; ++j) {
    if (col_kept[j]) continue;
    double best = std::numeric_limits<double>::infinity();
    for (int i : rows) best = std::min(best, inst.cost(i, j) - out.u[i]);
    out.v[j] = best;
  }
  for (int i = 0; i < m; ++i) {
    if (row_kept[i]) continue;
    double best = std::numeric_limits<double>::infinity();
    for (int j = 0; j < k; ++j) best = std::min(best, inst.cost(i, j) - out.v[j]);
    out.u[i] = best;
  }
  (void)tol;
  return out;
}

std::pair<double, double> verify_plan(const TransportPlan& plan, const TransportInstance& inst) {
  const int m = static_cast<int>(inst.mu.size());
  const int k = static_cast<int>(inst.nu.size());
  double marginal_err = 0.0;
  for (int i = 0; i < m; ++i) {
    double s = 0.0;
    for (int j = 0; j < k; ++j) s += plan.plan(i, j);
    marginal_err = std::max(marginal_err, std::abs(s - inst.mu[i]));
  }
  for (int j = 0; j < k; ++j) {
    double s = 0.0;
    for (int i = 0; i < m; ++i) s += plan.plan(i, j);
    marginal_err = std::max(marginal_err, std::abs(s - inst.nu[j]));
  }
  double primal = 0.0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < k; ++j) primal += plan.plan(i, j) * inst.cost(i, j);
  double dual = 0.0;
  for (int i = 0; i < m; ++i) dual += plan.u[i] * inst.mu[i];
  for (int j = 0; j < k; ++j) dual += plan.v[j] * inst.nu[j];
  return {marginal_err, primal - dual};
}

}  // namespace eigendist
