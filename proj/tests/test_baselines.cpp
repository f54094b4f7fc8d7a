#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "slicerlp/baselines.hpp"
#include "slicerlp/checker.hpp"
#include "slicerlp/generator.hpp"
#include "support.hpp"

using namespace slicerlp;
using slicerlp::testing::single_host_line;
using slicerlp::testing::two_link_toy;

TEST_CASE("integral relaxation: every rounding flavor agrees") {
  Instance inst = single_host_line(10.0, 5.0, 4.0);
  auto a = solve(inst);
  auto b = lpr_round(inst);
  auto c = lpsrr_round(inst);
  REQUIRE(a.status == SolveStatus::Feasible);
  CHECK(b.status == SolveStatus::Feasible);
  CHECK(c.status == SolveStatus::Feasible);
  CHECK(a.placement->hosts == b.placement->hosts);
  CHECK(a.placement->hosts == c.placement->hosts);
  CHECK(a.objective == doctest::Approx(b.objective));
  CHECK(a.objective == doctest::Approx(c.objective));
}

TEST_CASE("chainless toy: all algorithms reduce to pure routing") {
  Instance inst = two_link_toy(2.0);
  auto a = solve(inst);
  auto b = lpr_round(inst);
  auto c = lprr_lp1(inst);
  CHECK(a.status == SolveStatus::Feasible);
  CHECK(b.status == SolveStatus::Feasible);
  CHECK(c.status == SolveStatus::Feasible);
  CHECK(a.total_delay == doctest::Approx(2.0));
  CHECK(b.total_delay == doctest::Approx(2.0));
  CHECK(c.total_delay == doctest::Approx(2.0));
}

TEST_CASE("one-shot rounding collides where the dynamic loop sidesteps") {
  // Two one-stage services, both fractionally preferring the same node
  // whose capacity only fits one of them. One-shot pins both there and
  // fails; the dynamic loop reroutes the second service.
  Instance inst;
  inst.network.node_names = {"S1", "S2", "v1", "v2", "D"};
  auto add = [&](int a, int b, double delay) {
    inst.network.links.push_back({a, b, delay, 1000.0});
    inst.network.links.push_back({b, a, delay, 1000.0});
  };
  add(0, 2, 1.0);  // S1 close to v1
  add(1, 2, 1.0);  // S2 close to v1
  add(0, 3, 3.0);
  add(1, 3, 3.0);
  add(2, 4, 1.0);
  add(3, 4, 3.0);
  // v1 almost fits both rate-5 services, so fractional hosting there is
  // nearly free in activation cost and the delay term pulls both argmax
  // picks onto it; integrally it only fits one.
  inst.network.cloud.push_back({2, 9.95});
  inst.network.cloud.push_back({3, 20.0});
  for (int k = 0; k < 2; ++k) {
    ServiceRequest svc;
    svc.id = k + 1;
    svc.src = k;
    svc.dst = 4;
    Stage stage;
    stage.admissible.push_back({2, 3.0});
    stage.admissible.push_back({3, 3.0});
    svc.stages.push_back(stage);
    svc.rates = {5.0, 5.0};
    svc.deadline = 1000.0;
    inst.services.push_back(svc);
  }
  REQUIRE(validate_instance(inst).empty());

  auto oneshot = lpr_round(inst);
  auto dynamic = solve(inst);
  CHECK(oneshot.status == SolveStatus::PlacementFailed);
  REQUIRE(dynamic.status == SolveStatus::Feasible);
  auto oracle = exact_enumerate(inst);
  REQUIRE(oracle.status == OracleStatus::Optimal);
  CHECK(dynamic.objective >= oracle.objective - 1e-6);
}

TEST_CASE("static rounding pins from stale fractions but stays safe") {
  GeneratorConfig cfg;
  cfg.topology = "tiny8";
  cfg.services = 2;
  cfg.sfc_length = 2;
  cfg.admissible_count = 2;
  int lpsrr_feasible = 0;
  for (std::uint64_t seed = 500; seed < 512; ++seed) {
    cfg.seed = seed;
    Instance inst = generate_instance(cfg);
    auto stat = lpsrr_round(inst);
    auto dyn = solve(inst);
    if (stat.status == SolveStatus::Feasible) {
      ++lpsrr_feasible;
      auto bad = verify_full_solution(inst, *stat.placement, *stat.routing);
      CHECK(bad.empty());
      // The static variant never uses fewer LP solves to a feasible end.
      if (dyn.status == SolveStatus::Feasible) {
        CHECK(stat.lp_solves >= dyn.lp_solves);
      }
    }
  }
  CHECK(lpsrr_feasible >= 6);
}

TEST_CASE("one-shot feasibility implies static-rounding feasibility") {
  GeneratorConfig cfg;
  int pairs = 0;
  for (std::uint64_t seed = 900; seed < 930; ++seed) {
    cfg.seed = seed;
    cfg.services = 1 + static_cast<int>(seed % 5);
    Instance inst = generate_instance(cfg);
    auto oneshot = lpr_round(inst);
    if (oneshot.status != SolveStatus::Feasible) continue;
    auto stat = lpsrr_round(inst);
    CHECK(stat.status == SolveStatus::Feasible);
    ++pairs;
  }
  CHECK(pairs >= 10);
}

TEST_CASE("uncoverable stages fail placement in every variant") {
  Instance inst = single_host_line();
  inst.services[0].stages[0].admissible.clear();
  CHECK(lpr_round(inst).status == SolveStatus::PlacementFailed);
  CHECK(lpsrr_round(inst).status == SolveStatus::PlacementFailed);
  CHECK(lprr_lp1(inst).status == SolveStatus::PlacementFailed);
}

TEST_CASE("natural-relaxation rounding matches on an integral instance") {
  Instance inst = single_host_line(10.0, 5.0, 4.0);
  auto a = solve(inst);
  auto c = lprr_lp1(inst);
  REQUIRE(a.status == SolveStatus::Feasible);
  REQUIRE(c.status == SolveStatus::Feasible);
  CHECK(a.placement->hosts == c.placement->hosts);
}

TEST_CASE("oracle on the toy: objective sigma times two") {
  Instance inst = two_link_toy(2.0);
  auto oracle = exact_enumerate(inst);
  REQUIRE(oracle.status == OracleStatus::Optimal);
  CHECK(oracle.activated_nodes == 0);
  CHECK(oracle.total_delay == doctest::Approx(2.0));
  CHECK(oracle.objective == doctest::Approx(inst.sigma * 2.0));
}

TEST_CASE("oracle equals the only possible placement's routed cost") {
  Instance inst = single_host_line(10.0, 5.0, 4.0);
  auto oracle = exact_enumerate(inst);
  REQUIRE(oracle.status == OracleStatus::Optimal);
  CHECK(oracle.enumerated == 1);
  CHECK(oracle.activated_nodes == 1);
  CHECK(oracle.total_delay == doctest::Approx(4.0 + 3.0));
  CHECK(oracle.objective == doctest::Approx(1.0 + inst.sigma * 7.0));
}

TEST_CASE("oracle refuses oversized placement products") {
  GeneratorConfig cfg;
  cfg.services = 3;
  cfg.seed = 3;
  Instance inst = generate_instance(cfg);  // 6^9 placements
  OracleLimits limits;
  limits.max_placements = 1000;
  auto oracle = exact_enumerate(inst, {}, limits);
  CHECK(oracle.status == OracleStatus::LimitExceeded);
}

TEST_CASE("paired ordering: oracle <= lpdrr <= one-shot on tiny instances") {
  GeneratorConfig cfg;
  cfg.topology = "tiny8";
  cfg.services = 2;
  cfg.sfc_length = 2;
  cfg.admissible_count = 2;
  int all_feasible = 0;
  for (std::uint64_t seed = 1000; seed < 1050; ++seed) {
    cfg.seed = seed;
    Instance inst = generate_instance(cfg);
    auto oracle = exact_enumerate(inst);
    if (oracle.status != OracleStatus::Optimal) continue;
    auto dyn = solve(inst);
    auto oneshot = lpr_round(inst);
    if (dyn.status == SolveStatus::Feasible) {
      CHECK(oracle.objective <= dyn.objective + 1e-6);
    }
    if (oneshot.status == SolveStatus::Feasible) {
      CHECK(oracle.objective <= oneshot.objective + 1e-6);
    }
    if (dyn.status == SolveStatus::Feasible && oneshot.status == SolveStatus::Feasible) {
      ++all_feasible;
    }
  }
  CHECK(all_feasible >= 25);
}
