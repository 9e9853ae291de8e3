#include "eigendist/generators.hpp"

#include <cmath>
#include <numbers>

#include "eigendist/errors.hpp"
#include "eigendist/rng.hpp"

namespace eigendist {
namespace gen {

MarkovChain lazy_torus(int L, double q) {
  if (L < 3) throw ParameterRange("lazy_torus: L >= 3");
  if (!(q > 0.0 && q < 0.5)) throw ParameterRange("lazy_torus: q in (0, 1/2)");
  Mat P(L, L);
  for (int x = 0; x < L; ++x) {
    P(x, x) = 1.0 - 2.0 * q;
    P(x, (x + 1) % L) += q;
    P(x, (x + L - 1) % L) += q;
  }
  return validate_chain(P);
}

PseudoMetric rho_L(int L) {
  if (L < 4) throw ParameterRange("rho_L: L >= 4");
  Mat d(L, L);
  for (int x = 0; x < L; ++x)
    for (int y = 0; y < L; ++y) {
      int diff = ((x - y) % L + L) % L;
      // sin((L-d)pi/L) = sin(d pi/L); fold to the shorter arc so the
      // identity holds exactly in floating point too.
      diff = std::min(diff, L - diff);
      d(x, y) = std::sin(std::numbers::pi * diff / L);
    }
  return validate_metric(d);
}

double kappa_L(int L, double r) {
  if (L < 4) throw ParameterRange("kappa_L: L >= 4");
  return (1.0 - r) * (1.0 - std::cos(2.0 * std::numbers::pi / L));
}

PseudoMetric parity_metric(int L) {
  if (L % 2 != 0) throw OddTorus("parity_metric: parity is ill-defined on odd tori");
  Mat d(L, L);
  for (int x = 0; x < L; ++x)
    for (int y = 0; y < L; ++y) d(x, y) = ((x - y) % 2 + 2) % 2 == 1 ? 1.0 : 0.0;
  return validate_metric(d);
}

double kappa_parity(double q, double r) { return 1.0 - std::abs(2.0 * q - r); }

MarkovChain spin_flip(int n, double q) {
  if (n < 1) throw ParameterRange("spin_flip: n >= 1");
  if (n > 12) throw SizeCap("spin_flip: n <= 12 (2^n states)");
  if (!(q > 0.0 && q < 0.5)) throw ParameterRange("spin_flip: q in (0, 1/2)");
  const int N = 1 << n;
  Mat P(N, N);
  for (int x = 0; x < N; ++x)
    for (int y = 0; y < N; ++y) {
      int flips = __builtin_popcount(static_cast<unsigned>(x ^ y));
      P(x, y) = std::pow(q, flips) * std::pow(1.0 - q, n - flips);
    }
  return validate_chain(P);
}

PseudoMetric weighted_hamming(const Vec& a) {
  const int n = static_cast<int>(a.size());
  if (n < 1 || n > 12) throw SizeCap("weighted_hamming: 1 <= n <= 12");
  for (double w : a)
    if (w < 0.0) throw ParameterRange("weighted_hamming: weights >= 0");
  const int N = 1 << n;
  Mat d(N, N);
  for (int x = 0; x < N; ++x)
    for (int y = 0; y < N; ++y) {
      double s = 0.0;
      for (int i = 0; i < n; ++i)
        if (((x ^ y) >> i) & 1) s += a[i];
      d(x, y) = s;
    }
  return validate_metric(d);
}

MarkovChain gamblers_ruin(int N, double q) {
  if (N < 2) throw ParameterRange("gamblers_ruin: N >= 2");
  if (!(q > 0.0 && q <= 0.5)) throw ParameterRange("gamblers_ruin: q in (0, 1/2]");
  Mat P(N + 1, N + 1);
  P(0, 0) = 1.0;
  P(N, N) = 1.0;
  for (int x = 1; x < N; ++x) {
    P(x, x - 1) = q;
    P(x, x + 1) = q;
    P(x, x) = 1.0 - 2.0 * q;
  }
  return validate_chain(P);
}

Vec harmonic_h(const MarkovChain& chain, const std::vector<int>& A1, const std::vector<int>& A2) {
  const int n = chain.n;
  std::vector<int> role(n, 0);  // 0 transient, 1 in A1, 2 in A2
  for (int s : A1) role.at(s) = 1;
  for (int s : A2) {
    if (role.at(s) != 0) throw ValidationError("harmonic_h: A1 and A2 must be disjoint");
    role[s] = 2;
  }
  // Every transient state must reach A1 or A2.
  {
    std::vector<char> reach(n, 0);
    for (int s = 0; s < n; ++s)
      if (role[s] != 0) reach[s] = 1;
    bool grew = true;
    while (grew) {
      grew = false;
      for (int x = 0; x < n; ++x) {
        if (reach[x]) continue;
        for (int z = 0; z < n; ++z)
          if (chain.P(x, z) > 0.0 && reach[z]) {
            reach[x] = 1;
            grew = true;
            break;
          }
      }
    }
    for (int x = 0; x < n; ++x)
      if (!reach[x]) throw UnreachableAbsorber("harmonic_h: state cannot reach either absorbing set");
  }

  // Solve (I - P) h = 0 on transient states with boundary h = 1 on A1,
  // h = 0 on A2, by dense Gaussian elimination with partial pivoting.
  std::vector<int> transient;
  for (int s = 0; s < n; ++s)
    if (role[s] == 0) transient.push_back(s);
  const int m = static_cast<int>(transient.size());
  Mat A(m, m);
  Vec b(m, 0.0);
  for (int i = 0; i < m; ++i) {
    int x = transient[i];
    for (int j = 0; j < m; ++j) A(i, j) = (i == j ? 1.0 : 0.0) - chain.P(x, transient[j]);
    for (int z = 0; z < n; ++z)
      if (role[z] == 1) b[i] += chain.P(x, z);
  }
  for (int col = 0; col < m; ++col) {
    int piv = col;
    for (int r = col + 1; r < m; ++r)
      if (std::abs(A(r, col)) > std::abs(A(piv, col))) piv = r;
    if (std::abs(A(piv, col)) < 1e-14) throw NumericalFailure("harmonic_h: singular system");
    if (piv != col) {
      for (int c = 0; c < m; ++c) std::swap(A(col, c), A(piv, c));
      std::swap(b[col], b[piv]);
    }
    for (int r = 0; r < m; ++r) {
      if (r == col) continue;
      double factor = A(r, col) / A(col, col);
      if (factor == 0.0) continue;
      for (int c = col; c < m; ++c) A(r, c) -= factor * A(col, c);
      b[r] -= factor * b[col];
    }
  }
  Vec h(n, 0.0);
  for (int s : A1) h[s] = 1.0;
  for (int i = 0; i < m; ++i) h[transient[i]] = b[i] / A(i, i);
  return h;
}

MarkovChain random_lazy_chain(int n, uint64_t seed, double min_selfloop) {
  if (n < 1) throw ParameterRange("random_lazy_chain: n >= 1");
  if (!(min_selfloop > 0.5 && min_selfloop < 1.0))
    throw ParameterRange("random_lazy_chain: min_selfloop in (1/2, 1)");
  SplitMix64 rng(seed);
  Mat P(n, n);
  for (int x = 0; x < n; ++x) {
    Vec w(n);
    double sum = 0.0;
    for (int z = 0; z < n; ++z) sum += (w[z] = -std::log(1.0 - rng.uniform()));
    for (int z = 0; z < n; ++z) P(x, z) = (1.0 - min_selfloop) * w[z] / sum;
    P(x, x) += min_selfloop;
    // Close the row to 1 exactly.
    double rs = 0.0;
    for (int z = 0; z < n; ++z) rs += P(x, z);
    P(x, x) += 1.0 - rs;
  }
  return validate_chain(P);
}

PseudoMetric random_metric(int n, uint64_t seed) {
  SplitMix64 rng(seed);
  Mat d(n, n);
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y) d(x, y) = d(y, x) = 0.1 + 0.9 * rng.uniform();
  // Floyd-Warshall closure enforces the triangle inequality.
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) d(i, j) = std::min(d(i, j), d(i, k) + d(k, j));
  double m = d.max_abs();
  if (m > 0.0)
    for (double& x : d.a) x /= m;
  return validate_metric(d);
}

}  // namespace gen
}  // namespace eigendist
