#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "eigendist/errors.hpp"
#include "eigendist/rng.hpp"
#include "eigendist/transport.hpp"
#include "oracle_transport.hpp"

using namespace eigendist;

namespace {

TransportInstance random_instance(SplitMix64& rng, int m, int k, bool allow_zero_atoms) {
  TransportInstance inst;
  inst.mu.assign(m, 0.0);
  inst.nu.assign(k, 0.0);
  inst.cost = Mat(m, k);
  double smu = 0.0, snu = 0.0;
  for (int i = 0; i < m; ++i) {
    inst.mu[i] = (allow_zero_atoms && rng.uniform() < 0.25) ? 0.0 : rng.uniform() + 0.05;
    smu += inst.mu[i];
  }
  for (int j = 0; j < k; ++j) {
    inst.nu[j] = (allow_zero_atoms && rng.uniform() < 0.25) ? 0.0 : rng.uniform() + 0.05;
    snu += inst.nu[j];
  }
  if (smu == 0.0) inst.mu[0] = smu = 1.0;
  if (snu == 0.0) inst.nu[0] = snu = 1.0;
  for (int i = 0; i < m; ++i) inst.mu[i] /= smu;
  for (int j = 0; j < k; ++j) inst.nu[j] /= snu;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < k; ++j) inst.cost(i, j) = rng.uniform();
  return inst;
}

}  // namespace

TEST_CASE("point mass to point mass pays the single cost") {
  TransportInstance inst;
  inst.mu = {1.0};
  inst.nu = {1.0};
  inst.cost = Mat(1, 1);
  inst.cost(0, 0) = 0.37;
  TransportPlan plan = solve_transport(inst);
  CHECK(plan.value == doctest::Approx(0.37).epsilon(1e-14));
  CHECK(plan.plan(0, 0) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("identical marginals with zero diagonal cost transport for free") {
  TransportInstance inst;
  inst.mu = {0.2, 0.3, 0.5};
  inst.nu = inst.mu;
  inst.cost = Mat(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) inst.cost(i, j) = (i == j) ? 0.0 : 1.0;
  TransportPlan plan = solve_transport(inst);
  CHECK(plan.value == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("two by two hand instance") {
  // send 0.3 from row 0 to col 1 at cost 2, rest diagonal at costs 1 and 3:
  // optimum keeps everything diagonal: 0.5*1 + 0.5*3 = 2.0; against
  // cross: 0.5*2 + 0.5*4 = 3.0.
  TransportInstance inst;
  inst.mu = {0.5, 0.5};
  inst.nu = {0.5, 0.5};
  inst.cost = Mat(2, 2);
  inst.cost(0, 0) = 1.0;
  inst.cost(0, 1) = 2.0;
  inst.cost(1, 0) = 4.0;
  inst.cost(1, 1) = 3.0;
  TransportPlan plan = solve_transport(inst);
  CHECK(plan.value == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("random instances agree with vertex enumeration") {
  SplitMix64 rng(20240811);
  for (int trial = 0; trial < 400; ++trial) {
    int m = 2 + static_cast<int>(rng.next() % 3);
    int k = 2 + static_cast<int>(rng.next() % 3);
    TransportInstance inst = random_instance(rng, m, k, false);
    TransportPlan plan = solve_transport(inst);
    double expect = oracle::optimal_value(inst);
    CHECK(std::abs(plan.value - expect) <= 1e-10);
    auto [marg_err, gap] = verify_plan(plan, inst);
    CHECK(marg_err <= 1e-12);
    CHECK(std::abs(gap) <= 1e-10);
  }
}

TEST_CASE("zero atoms are pruned without breaking optimality or duality") {
  SplitMix64 rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    int m = 2 + static_cast<int>(rng.next() % 3);
    int k = 2 + static_cast<int>(rng.next() % 3);
    TransportInstance inst = random_instance(rng, m, k, true);
    TransportPlan plan = solve_transport(inst);
    double expect = oracle::optimal_value(inst);
    CHECK(std::abs(plan.value - expect) <= 1e-10);
    auto [marg_err, gap] = verify_plan(plan, inst);
    CHECK(marg_err <= 1e-12);
    CHECK(std::abs(gap) <= 1e-10);
    // dual feasibility on every arc, including pruned rows and columns
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < k; ++j)
        CHECK(plan.u[i] + plan.v[j] <= inst.cost(i, j) + 1e-10);
  }
}

TEST_CASE("degenerate ties resolve deterministically") {
  TransportInstance inst;
  inst.mu = {0.25, 0.25, 0.25, 0.25};
  inst.nu = {0.25, 0.25, 0.25, 0.25};
  inst.cost = Mat(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) inst.cost(i, j) = std::abs(i - j);
  TransportPlan a = solve_transport(inst);
  TransportPlan b = solve_transport(inst);
  CHECK(a.value == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(a.plan.a == b.plan.a);
  CHECK(a.u == b.u);
  CHECK(a.v == b.v);
}

TEST_CASE("mismatched total mass is rejected") {
  TransportInstance inst;
  inst.mu = {0.6, 0.6};
  inst.nu = {0.5, 0.5};
  inst.cost = Mat(2, 2);
  CHECK_THROWS_AS(solve_transport(inst), ValidationError);
}
