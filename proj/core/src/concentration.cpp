#include "eigendist/concentration.hpp"

#include <cmath>
#include <limits>

#include "eigendist/errors.hpp"
#include "eigendist/parallel.hpp"
#include "eigendist/rng.hpp"

namespace eigendist {

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

Vec apply_P(const MarkovChain& chain, const Vec& f) {
  Vec out(chain.n, 0.0);
  for (int x = 0; x < chain.n; ++x)
    for (int z = 0; z < chain.n; ++z) out[x] += chain.P(x, z) * f[z];
  return out;
}

}  // namespace

double lipschitz_norm(const Vec& f, const PseudoMetric& rho) {
  double norm = 0.0;
  for (int x = 0; x < rho.n; ++x)
    for (int y = x + 1; y < rho.n; ++y) {
      double df = std::abs(f[x] - f[y]);
      if (rho.d(x, y) > 0.0)
        norm = std::max(norm, df / rho.d(x, y));
      else if (df > 0.0)
        return std::numeric_limits<double>::infinity();
    }
  return norm;
}

double contraction_check(const MarkovChain& chain, const PseudoMetric& rho, double kappa, const Vec& f) {
  return lipschitz_norm(apply_P(chain, f), rho) - (1.0 - kappa) * lipschitz_norm(f, rho);
}

double jump_bound(const MarkovChain& chain, const PseudoMetric& rho) {
  double J = 0.0;
  for (int x = 0; x < chain.n; ++x)
    for (int y = 0; y < chain.n; ++y)
      if (chain.P(x, y) > 0.0) J = std::max(J, rho.d(x, y));
  return J;
}

Vec sigma_moments(const MarkovChain& chain, const PseudoMetric& rho, int n_max) {
  if (n_max < 2) throw ParameterRange("sigma_moments: n_max must be >= 2");
  const int n = chain.n;
  Vec out(n_max + 1, 0.0);
  for (int x = 0; x < n; ++x) {
    // inner(z) = mean one-step displacement from x as seen at z
    Vec inner(n, 0.0);
    for (int z = 0; z < n; ++z)
      for (int z2 = 0; z2 < n; ++z2) inner[z] += rho.d(z, z2) * chain.P(x, z2);
    for (int k = 2; k <= n_max; ++k) {
      double moment = 0.0;
      for (int z = 0; z < n; ++z) moment += chain.P(x, z) * std::pow(inner[z], k);
      out[k] = std::max(out[k], moment);
    }
  }
  return out;
}

double exp_moment_bound(const ConcentrationParams& params, int T) {
  if (params.kappa < 0.0 || params.kappa > 1.0) throw ParameterRange("exp_moment_bound: kappa in [0,1]");
  if (T < 1) throw ParameterRange("exp_moment_bound: T >= 1");
  const int n_max = static_cast<int>(params.sigma.size()) - 1;
  if (n_max < 2) throw ParameterRange("exp_moment_bound: sigma moments missing");
  const double lip = params.lip_norm;
  const bool contracting = params.kappa > 0.0;

  auto weight = [&](int k) {
    return contracting ? 1.0 / (1.0 - std::pow(1.0 - params.kappa, k)) : static_cast<double>(T);
  };
  double sum = 0.0;
  for (int k = 2; k <= n_max; ++k) sum += std::pow(lip, k) * params.sigma[k] * weight(k) / factorial(k);

  // Tail majorant via sigma^(k) <= (2J)^k; the per-term weight is
  // dominated by its k = 2 value.
  const double beta = 2.0 * params.J * lip;
  double rem = std::exp(beta);
  for (int k = 0; k <= n_max; ++k) rem -= std::pow(beta, k) / factorial(k);
  rem = std::max(0.0, rem) * weight(2);
  if (rem > 1e3) throw DivergentTail("exp_moment_bound: tail majorant exceeds 1e3; bound is useless here");
  return sum + rem;
}

double bernstein_tail(double alpha, double beta, double r) {
  if (!(alpha > 0.0) || !(beta > 0.0)) throw ParameterRange("bernstein_tail: alpha, beta > 0");
  if (r < 0.0) throw ParameterRange("bernstein_tail: r >= 0");
  return std::exp(-0.5 * r * r / (alpha + r / 3.0));
}

double function_tail_bound(double lip_norm, double J, double kappa, int T, double r) {
  (void)lip_norm;
  (void)J;
  if (kappa > 0.0) return std::exp(-r * r / (8.0 / (kappa * (2.0 - kappa)) + 4.0 / 3.0 * r));
  return std::exp(-r * r / (8.0 + 4.0 * r / (3.0 * std::sqrt(static_cast<double>(T)))));
}

double distance_tail_bound(double J, double kappa, int T, double r) {
  (void)J;
  if (kappa > 0.0) return 2.0 * std::exp(-r * r / (64.0 / (kappa * (2.0 - kappa)) + 8.0 / 3.0 * r));
  return 2.0 * std::exp(-r * r / (64.0 * static_cast<double>(T) + 8.0 / 3.0 * r));
}

TailReport simulate_function_tail(const MarkovChain& chain, const Vec& f, const PseudoMetric& rho,
                                  double kappa, int x0, int T, int samples, uint64_t seed,
                                  const Vec& r_grid) {
  const int n = chain.n;
  const double lip = lipschitz_norm(f, rho);
  if (!std::isfinite(lip)) throw DegenerateInput("simulate_function_tail: f is not rho-Lipschitz");
  const double J = jump_bound(chain, rho);
  const double scale =
      (kappa > 0.0) ? lip * J : lip * J * std::sqrt(static_cast<double>(T));

  // Exact centering via matrix powers.
  Vec pf = f;
  for (int t = 0; t < T; ++t) pf = apply_P(chain, pf);
  const double center = pf[x0];

  std::vector<Vec> cdf(n);
  for (int x = 0; x < n; ++x) {
    double acc = 0.0;
    cdf[x].resize(n);
    for (int z = 0; z < n; ++z) cdf[x][z] = (acc += chain.P(x, z));
  }

  Vec deviation(samples);
  parallel_for(samples, [&](int s) {
    SplitMix64 rng = derived_rng(seed, static_cast<uint64_t>(s));
    int state = x0;
    for (int t = 0; t < T; ++t) {
      double u = rng.uniform() * cdf[state].back();
      state = static_cast<int>(std::lower_bound(cdf[state].begin(), cdf[state].end(), u) - cdf[state].begin());
      if (state >= n) state = n - 1;
    }
    deviation[s] = (f[state] - center) / scale;
  });

  TailReport report;
  report.r = r_grid;
  for (double r : r_grid) {
    long count = 0;
    for (double d : deviation)
      if (d > r) ++count;
    double phat = static_cast<double>(count) / samples;
    report.empirical.push_back(phat);
    report.bound.push_back(function_tail_bound(lip, J, kappa, T, r));
    report.mc_stderr.push_back(std::sqrt(phat * (1.0 - phat) / samples));
  }
  return report;
}

}  // namespace eigendist
