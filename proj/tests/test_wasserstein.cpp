#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "eigendist/generators.hpp"
#include "eigendist/rng.hpp"
#include "eigendist/wasserstein.hpp"

using namespace eigendist;

namespace {

PseudoMetric scaled(const PseudoMetric& rho, double c) {
  Mat d = rho.d;
  for (double& v : d.a) v *= c;
  PseudoMetric out;
  out.n = rho.n;
  out.d = d;
  return out;
}

}  // namespace

TEST_CASE("pair indexing is a bijection on unordered pairs") {
  int n = 9;
  std::vector<int> hit(pair_count(n), 0);
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y) {
      int k = pair_index(n, x, y);
      REQUIRE(k >= 0);
      REQUIRE(k < pair_count(n));
      ++hit[k];
    }
  for (int h : hit) CHECK(h == 1);
}

TEST_CASE("image of a metric under W is a pseudo metric") {
  MarkovChain chain = gen::random_lazy_chain(6, 3, 0.6);
  PseudoMetric rho = gen::random_metric(6, 4);
  for (double p : {1.0, 2.0, 3.5}) {
    WpResult res = apply_W(chain, rho, p);
    for (int x = 0; x < 6; ++x) {
      CHECK(res.metric.d(x, x) == 0.0);
      for (int y = 0; y < 6; ++y) {
        CHECK(res.metric.d(x, y) == res.metric.d(y, x));
        for (int z = 0; z < 6; ++z)
          CHECK(res.metric.d(x, y) <= res.metric.d(x, z) + res.metric.d(z, y) + 1e-10);
      }
    }
  }
}

TEST_CASE("W is monotone in the metric argument") {
  SplitMix64 rng(555);
  for (int trial = 0; trial < 30; ++trial) {
    MarkovChain chain = gen::random_lazy_chain(5, rng.next(), 0.6);
    PseudoMetric lo = gen::random_metric(5, rng.next());
    // hi = lo + a metric surplus, still a metric
    PseudoMetric surplus = gen::random_metric(5, rng.next());
    Mat hi_d = lo.d;
    for (size_t i = 0; i < hi_d.a.size(); ++i) hi_d.a[i] += surplus.d.a[i];
    PseudoMetric hi = validate_metric(hi_d);
    for (double p : {1.0, 2.0}) {
      Mat wlo = apply_W(chain, lo, p).metric.d;
      Mat whi = apply_W(chain, hi, p).metric.d;
      for (size_t i = 0; i < wlo.a.size(); ++i) CHECK(wlo.a[i] <= whi.a[i] + 1e-10);
    }
  }
}

TEST_CASE("W is positively homogeneous") {
  MarkovChain chain = gen::random_lazy_chain(6, 17, 0.6);
  PseudoMetric rho = gen::random_metric(6, 18);
  for (double p : {1.0, 2.0, 3.0}) {
    for (double c : {0.25, 2.0, 10.0}) {
      Mat wc = apply_W(chain, scaled(rho, c), p).metric.d;
      Mat w = apply_W(chain, rho, p).metric.d;
      for (size_t i = 0; i < w.a.size(); ++i)
        CHECK(wc.a[i] == doctest::Approx(c * w.a[i]).epsilon(1e-9).scale(1.0));
    }
  }
}

TEST_CASE("W_p is nondecreasing in p") {
  SplitMix64 rng(808);
  for (int trial = 0; trial < 20; ++trial) {
    MarkovChain chain = gen::random_lazy_chain(5, rng.next(), 0.55);
    PseudoMetric rho = gen::random_metric(5, rng.next());
    Mat w1 = apply_W(chain, rho, 1.0).metric.d;
    Mat w2 = apply_W(chain, rho, 2.0).metric.d;
    Mat w4 = apply_W(chain, rho, 4.0).metric.d;
    for (size_t i = 0; i < w1.a.size(); ++i) {
      CHECK(w1.a[i] <= w2.a[i] + 1e-10);
      CHECK(w2.a[i] <= w4.a[i] + 1e-10);
    }
  }
}

TEST_CASE("power rule: W_p of rho to the 1/p equals W_1 of rho to the 1/p") {
  // rho^(1/p) is a metric when rho is, and the p-th power cost matches
  // the 1-Wasserstein cost of rho itself, plan for plan.
  SplitMix64 rng(4242);
  for (int trial = 0; trial < 20; ++trial) {
    MarkovChain chain = gen::random_lazy_chain(5, rng.next(), 0.6);
    PseudoMetric rho = gen::random_metric(5, rng.next());
    double p = 2.0 + 2.0 * rng.uniform();
    Mat root = rho.d;
    for (double& v : root.a) v = std::pow(v, 1.0 / p);
    PseudoMetric rho_root = validate_metric(root);
    Mat wp = apply_W(chain, rho_root, p).metric.d;
    Mat w1 = apply_W(chain, rho, 1.0).metric.d;
    for (size_t i = 0; i < wp.a.size(); ++i)
      CHECK(wp.a[i] == doctest::Approx(std::pow(w1.a[i], 1.0 / p)).epsilon(1e-8).scale(1.0));
  }
}

TEST_CASE("W_1 of the indicator metric is alpha") {
  SplitMix64 rng(31337);
  for (int trial = 0; trial < 20; ++trial) {
    MarkovChain chain = gen::random_lazy_chain(6, rng.next(), 0.55);
    Mat w = apply_W(chain, indicator_metric(6), 1.0).metric.d;
    Mat alpha = alpha_metric(chain).d;
    for (size_t i = 0; i < w.a.size(); ++i)
      CHECK(w.a[i] == doctest::Approx(alpha.a[i]).epsilon(1e-10).scale(1.0));
  }
}

TEST_CASE("one step contraction bound against alpha for bounded metrics") {
  // for rho <= 1: W_p(rho)(x,y) <= alpha(x,y)^(1/p) by crude coupling
  SplitMix64 rng(2718);
  MarkovChain chain = gen::random_lazy_chain(6, 5150, 0.6);
  PseudoMetric rho = gen::random_metric(6, 5151);
  double worst = pair_lipschitz_check(chain, rho, 2.0, 500, 2024);
  CHECK(worst <= 1e-10);
}

TEST_CASE("requested plans have the right marginals") {
  MarkovChain chain = gen::random_lazy_chain(5, 808, 0.6);
  PseudoMetric rho = gen::random_metric(5, 809);
  WpResult res = apply_W(chain, rho, 2.0, true);
  REQUIRE(res.plans.has_value());
  REQUIRE(static_cast<int>(res.plans->size()) == pair_count(5));
  for (int x = 0; x < 5; ++x)
    for (int y = x + 1; y < 5; ++y) {
      const TransportPlan& plan = (*res.plans)[pair_index(5, x, y)];
      for (int i = 0; i < 5; ++i) {
        double row = 0.0, col = 0.0;
        for (int j = 0; j < 5; ++j) {
          row += plan.plan(i, j);
          col += plan.plan(j, i);
        }
        CHECK(row == doctest::Approx(chain.P(x, i)).epsilon(1e-12).scale(1.0));
        CHECK(col == doctest::Approx(chain.P(y, i)).epsilon(1e-12).scale(1.0));
      }
    }
}
