#include "eigendist/wasserstein.hpp"

#include <cmath>
#include <sstream>

#include "eigendist/errors.hpp"
#include "eigendist/parallel.hpp"
#include "eigendist/rng.hpp"

namespace eigendist {

namespace {

TransportInstance pair_instance(const MarkovChain& chain, const Mat& cost_p, int x, int y) {
  const int n = chain.n;
  TransportInstance inst;
  inst.mu.resize(n);
  inst.nu.resize(n);
  for (int z = 0; z < n; ++z) {
    inst.mu[z] = chain.P(x, z);
    inst.nu[z] = chain.P(y, z);
  }
  inst.cost = cost_p;
  return inst;
}

}  // namespace

WpResult apply_W(const MarkovChain& chain, const PseudoMetric& rho, double p, bool keep_plans,
                 const Tolerances& tol) {
  if (rho.n != chain.n) throw ValidationError("metric dimension does not match chain");
  if (!(p >= 1.0)) throw ParameterRange("exponent p must be >= 1");
  const int n = chain.n;
  Mat cost_p(n, n);
  for (size_t i = 0; i < cost_p.a.size(); ++i) cost_p.a[i] = (p == 1.0) ? rho.d.a[i] : std::pow(rho.d.a[i], p);

  Mat out(n, n);
  const int pairs = pair_count(n);
  std::vector<TransportPlan> plans(keep_plans ? pairs : 0);
  std::vector<std::string> failures(pairs);

  parallel_for(pairs, [&](int idx) {
    // Invert the lexicographic pair index.
    int x = 0, rest = idx;
    while (rest >= n - 1 - x) rest -= n - 1 - x, ++x;
    int y = x + 1 + rest;
    try {
      TransportPlan plan = solve_transport(pair_instance(chain, cost_p, x, y), tol);
      double w = (p == 1.0) ? plan.value : std::pow(plan.value, 1.0 / p);
      out(x, y) = out(y, x) = w;
      if (keep_plans) plans[idx] = std::move(plan);
    } catch (const Error& e) {
      std::ostringstream os;
      os << "pair (" << x << "," << y << "): " << e.what();
      failures[idx] = os.str();
    }
  });
  for (const auto& f : failures)
    if (!f.empty()) throw NumericalFailure("transport solve failed at " + f);

  // Gluing guarantees the triangle inequality exactly; a miss beyond the
  // relative slack indicates a solver fault.
  PseudoMetric image = validate_metric(out, tol);
  WpResult result{std::move(image), std::nullopt};
  if (keep_plans) result.plans = std::move(plans);
  return result;
}

double pair_lipschitz_check(const MarkovChain& chain, const PseudoMetric& rho, double p, int samples,
                            uint64_t seed, const Tolerances& tol) {
  if (rho.max_entry() > 1.0 + 1e-12) throw ParameterRange("rho must be bounded by 1 entrywise; rescale first");
  const PseudoMetric alpha = alpha_metric(chain);
  const Mat w = apply_W(chain, rho, p, false, tol).metric.d;
  Mat wp(chain.n, chain.n);
  for (size_t i = 0; i < w.a.size(); ++i) wp.a[i] = std::pow(w.a[i], p);

  SplitMix64 rng(seed);
  double worst = 0.0;
  const int n = chain.n;
  for (int s = 0; s < samples; ++s) {
    int x1 = static_cast<int>(rng.next() % n);
    int y1 = static_cast<int>(rng.next() % n);
    int x2 = static_cast<int>(rng.next() % n);
    int y2 = static_cast<int>(rng.next() % n);
    double excess = std::abs(wp(x1, y1) - wp(x2, y2)) - (alpha.d(x1, x2) + alpha.d(y1, y2));
    worst = std::max(worst, excess);
  }
  return worst;
}

}  // namespace eigendist
