#include <benchmark/benchmark.h>

#include "eigendist/eigendistance.hpp"
#include "eigendist/generators.hpp"
#include "eigendist/rng.hpp"
#include "eigendist/transport.hpp"
#include "eigendist/wasserstein.hpp"

using namespace eigendist;

static void BM_SolveTransport(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  SplitMix64 rng(7);
  TransportInstance inst;
  inst.mu.assign(n, 0.0);
  inst.nu.assign(n, 0.0);
  inst.cost = Mat(n, n);
  double smu = 0, snu = 0;
  for (int i = 0; i < n; ++i) {
    inst.mu[i] = rng.uniform() + 0.01;
    inst.nu[i] = rng.uniform() + 0.01;
    smu += inst.mu[i];
    snu += inst.nu[i];
  }
  for (int i = 0; i < n; ++i) {
    inst.mu[i] /= smu;
    inst.nu[i] /= snu;
    for (int j = 0; j < n; ++j) inst.cost(i, j) = rng.uniform();
  }
  for (auto _ : state) {
    TransportPlan plan = solve_transport(inst);
    benchmark::DoNotOptimize(plan.value);
  }
}
BENCHMARK(BM_SolveTransport)->Arg(8)->Arg(32)->Arg(128);

static void BM_ApplyW(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  MarkovChain chain = gen::random_lazy_chain(n, 11, 0.6);
  PseudoMetric rho = gen::random_metric(n, 13);
  for (auto _ : state) {
    WpResult res = apply_W(chain, rho, 1.0);
    benchmark::DoNotOptimize(res.metric.d.a.data());
  }
}
BENCHMARK(BM_ApplyW)->Arg(8)->Arg(16)->Arg(32);

static void BM_IterateF(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  MarkovChain chain = gen::random_lazy_chain(n, 11, 0.6);
  for (auto _ : state) {
    EigendistanceResult res = iterate_F(chain, 1.0, indicator_metric(n));
    benchmark::DoNotOptimize(res.kappa);
  }
}
BENCHMARK(BM_IterateF)->Arg(6)->Arg(10);

BENCHMARK_MAIN();
