#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "slicerlp/baselines.hpp"
#include "slicerlp/checker.hpp"
#include "slicerlp/generator.hpp"
#include "slicerlp/lpdrr.hpp"
#include "support.hpp"

using namespace slicerlp;
using slicerlp::testing::single_host_line;
using slicerlp::testing::two_candidate_instance;
using slicerlp::testing::two_link_toy;

TEST_CASE("fractional split rounds onto the node with room") {
  // mu1 undersized: the relaxation splits, rounding must land on v2.
  Instance inst = two_candidate_instance(/*mu1=*/3.0, /*mu2=*/10.0, /*rate=*/5.0);
  auto outcome = round_placement(inst);
  REQUIRE(outcome.placement.has_value());
  CHECK(outcome.placement->hosts[0][0] == 2);
}

TEST_CASE("integral relaxation needs no rounding iterations") {
  Instance inst = single_host_line(10.0, 5.0, 4.0);
  auto outcome = round_placement(inst);
  REQUIRE(outcome.placement.has_value());
  CHECK(outcome.relaxation_integral);
  CHECK(outcome.loop_lp_solves == 0);
  CHECK(outcome.lp_solves == 1);
}

TEST_CASE("rounding failure names the stage") {
  // Both candidates undersized: every pin flips to 0 and the final vector
  // hosts nothing.
  Instance inst = two_candidate_instance(3.0, 3.0, 5.0);
  auto outcome = round_placement(inst);
  CHECK_FALSE(outcome.placement.has_value());
  CHECK_FALSE(outcome.failure.empty());
}

TEST_CASE("loose deadlines succeed in the first refinement iteration") {
  Instance inst = single_host_line(10.0, 5.0, 4.0, /*deadline=*/100.0);
  Placement placement;
  placement.hosts = {{1}};
  auto refined = refine_routing(inst, placement);
  REQUIRE(refined.plan.has_value());
  CHECK(refined.iterations == 1);
  CHECK(refined.plan->service_delay.at(0) == doctest::Approx(4.0 + 1.0 + 2.0));
}

TEST_CASE("toy with deadline 2: recomputed delay 2 is accepted") {
  Instance inst = two_link_toy(/*deadline=*/2.0);
  Placement placement;
  placement.hosts = {{}};
  auto refined = refine_routing(inst, placement);
  REQUIRE(refined.plan.has_value());
  CHECK(refined.plan->service_delay.at(0) == doctest::Approx(2.0));
}

TEST_CASE("toy with deadline below 2 exhausts the refinement loop") {
  Instance inst = two_link_toy(/*deadline=*/1.9);
  Placement placement;
  placement.hosts = {{}};
  auto refined = refine_routing(inst, placement);
  CHECK_FALSE(refined.plan.has_value());
  CHECK(refined.lp_solves == 10);  // iter_max
}

TEST_CASE("reweighting separates two services contending for a fast link") {
  // With even weights the routing LP satisfies service 1's deadline only
  // on average (split over fast and medium links), so the recomputed
  // max-path delay violates it. Boosting its weight buys the whole fast
  // link from service 2.
  Instance inst;
  inst.network.node_names = {"S1", "S2", "D"};
  inst.network.links.push_back({0, 2, 1.0, 1.0});   // 0: S1->D fast, narrow
  inst.network.links.push_back({0, 2, 3.0, 1.0});   // 1: S1->D medium
  inst.network.links.push_back({1, 0, 0.0, 10.0});  // 2: S2 joins at S1
  inst.network.links.push_back({1, 2, 3.2, 10.0});  // 3: S2's own fallback
  ServiceRequest s1;
  s1.id = 1;
  s1.src = 0;
  s1.dst = 2;
  s1.rates = {1.0};
  s1.deadline = 2.5;  // a split meets this on average, not on the max path
  ServiceRequest s2;
  s2.id = 2;
  s2.src = 1;
  s2.dst = 2;
  s2.rates = {1.0};
  s2.deadline = 50.0;
  inst.services = {s1, s2};

  Placement placement;
  placement.hosts = {{}, {}};
  auto refined = refine_routing(inst, placement);
  REQUIRE(refined.plan.has_value());
  CHECK(refined.iterations >= 2);
  CHECK(refined.plan->service_delay.at(0) == doctest::Approx(1.0));
  CHECK(refined.final_weights[0] > 1.0);
}

TEST_CASE("solve on the toy: feasible, no activation, delay 2") {
  Instance inst = two_link_toy(2.0);
  auto report = solve(inst);
  CHECK(report.status == SolveStatus::Feasible);
  CHECK(report.activated_nodes == 0);
  CHECK(report.total_delay == doctest::Approx(2.0));
  CHECK(report.lp_solves >= 1);
  CHECK(report.objective == doctest::Approx(inst.sigma * 2.0));
  REQUIRE(report.routing.has_value());
  CHECK(verify_full_solution(inst, *report.placement, *report.routing).empty());
}

TEST_CASE("uncoverable stage reports PlacementFailed") {
  Instance inst = single_host_line();
  inst.services[0].stages[0].admissible.clear();
  auto report = solve(inst);
  CHECK(report.status == SolveStatus::PlacementFailed);
}

TEST_CASE("per-run LP-solve accounting stays within the complexity bound") {
  GeneratorConfig cfg;
  for (std::uint64_t seed = 40; seed < 52; ++seed) {
    cfg.seed = seed;
    cfg.services = 1 + static_cast<int>(seed % 4);
    Instance inst = generate_instance(cfg);
    AlgoParams params;
    auto report = solve(inst, params);
    CHECK(report.rounding_lp_solves + report.refinement_lp_solves <=
          lp_solve_budget(inst, params));
    CHECK(report.lp_solves ==
          1 + report.rounding_lp_solves + report.refinement_lp_solves);
    if (report.status == SolveStatus::Feasible) {
      auto bad = verify_full_solution(inst, *report.placement, *report.routing);
      for (const auto& b : bad) MESSAGE(b);
      CHECK(bad.empty());
    }
  }
}

TEST_CASE("random desk instances: solve against the exact oracle") {
  GeneratorConfig cfg;
  cfg.topology = "tiny8";
  cfg.admissible_count = 2;  // keeps the oracle's placement product tiny
  cfg.sfc_length = 2;
  cfg.services = 3;
  int compared = 0;
  for (std::uint64_t seed = 300; seed < 312; ++seed) {
    cfg.seed = seed;
    Instance inst = generate_instance(cfg);
    auto report = solve(inst);
    auto oracle = exact_enumerate(inst);
    if (oracle.status == OracleStatus::LimitExceeded) continue;
    if (report.status == SolveStatus::Feasible) {
      // A feasible heuristic answer implies the instance is truly feasible
      // and can never beat the optimum.
      REQUIRE(oracle.status == OracleStatus::Optimal);
      CHECK(report.objective >= oracle.objective - 1e-6);
      ++compared;
    }
  }
  CHECK(compared >= 5);
}

TEST_CASE("one-function-per-node family: rounding recovers the oracle optimum") {
  GeneratorConfig cfg;
  cfg.sfc_length = 1;
  cfg.zero_link_delay = true;
  cfg.zero_nfv_delay = true;
  cfg.infinite_link_capacity = true;
  cfg.slack_deadlines = true;
  cfg.fixed_node_capacity = 7.0;
  cfg.rate_min_override = 7;
  cfg.rate_max_override = 7;
  cfg.admissible_count = 3;
  cfg.services = 4;
  for (std::uint64_t seed = 70; seed < 76; ++seed) {
    cfg.seed = seed;
    Instance inst = generate_instance(cfg);
    auto report = solve(inst);
    auto oracle = exact_enumerate(inst);
    REQUIRE(oracle.status == OracleStatus::Optimal);
    REQUIRE(report.status == SolveStatus::Feasible);
    CHECK(report.activated_nodes == oracle.activated_nodes);
  }
}
