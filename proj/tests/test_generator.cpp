#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "slicerlp/generator.hpp"
#include "slicerlp/instance_io.hpp"

using namespace slicerlp;

TEST_CASE("same seed, same instance") {
  GeneratorConfig cfg;
  cfg.services = 4;
  cfg.seed = 1;
  Instance a = generate_instance(cfg);
  Instance b = generate_instance(cfg);
  CHECK(instance_to_json(a) == instance_to_json(b));
  cfg.seed = 2;
  CHECK(instance_to_json(generate_instance(cfg)) != instance_to_json(a));
}

TEST_CASE("protocol ranges hold across a hundred instances") {
  GeneratorConfig cfg;
  cfg.services = 5;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    cfg.seed = seed;
    Instance inst = generate_instance(cfg);
    REQUIRE(validate_instance(inst).empty());
    for (const auto& link : inst.network.links) {
      CHECK(link.capacity >= 5.0);
      CHECK(link.capacity <= 55.0);
      CHECK(link.delay >= 1.0);
      CHECK(link.delay <= 2.0);
    }
    for (const auto& c : inst.network.cloud) {
      CHECK(c.mu >= 50.0);
      CHECK(c.mu <= 100.0);
    }
    for (const auto& svc : inst.services) {
      CHECK(svc.chain_length() == 3);
      for (double r : svc.rates) {
        CHECK(r >= 1.0);
        CHECK(r <= 11.0);
        CHECK(r == svc.rates[0]);  // one rate per service
      }
      for (const auto& stage : svc.stages) {
        for (const auto& a : stage.admissible) {
          CHECK(a.nfv_delay >= 3.0);
          CHECK(a.nfv_delay <= 6.0);
        }
      }
      CHECK(svc.deadline >= 20.0);
    }
  }
}

TEST_CASE("deadlines decompose into base, distance and slack terms") {
  GeneratorConfig cfg;
  cfg.services = 5;
  for (std::uint64_t seed = 200; seed < 220; ++seed) {
    cfg.seed = seed;
    Instance inst = generate_instance(cfg);
    for (const auto& svc : inst.services) {
      auto dist = shortest_delay(inst.network, svc.src, svc.dst);
      REQUIRE(dist.has_value());
      double alpha = svc.deadline - 20.0 - 3.0 * (*dist);
      CHECK(alpha >= -1e-9);
      CHECK(alpha <= 5.0 + 1e-9);
    }
  }
}

TEST_CASE("common destination mode shares one sink") {
  GeneratorConfig cfg;
  cfg.services = 5;
  cfg.seed = 77;
  Instance inst = generate_instance(cfg);
  for (const auto& svc : inst.services) {
    CHECK(svc.dst == inst.services[0].dst);
    CHECK_FALSE(inst.network.is_cloud(svc.dst));
    CHECK_FALSE(inst.network.is_cloud(svc.src));
  }
}

TEST_CASE("admissibility restriction caps the per-stage host count") {
  GeneratorConfig cfg;
  cfg.services = 3;
  cfg.seed = 9;
  cfg.admissible_count = 2;
  Instance inst = generate_instance(cfg);
  for (const auto& svc : inst.services) {
    for (const auto& stage : svc.stages) {
      CHECK(stage.admissible.size() == 2);
    }
  }
}

TEST_CASE("special-family overrides") {
  GeneratorConfig cfg;
  cfg.services = 2;
  cfg.seed = 12;
  cfg.sfc_length = 1;
  cfg.zero_link_delay = true;
  cfg.zero_nfv_delay = true;
  cfg.infinite_link_capacity = true;
  cfg.slack_deadlines = true;
  cfg.fixed_node_capacity = 7.0;
  cfg.rate_min_override = 7;
  cfg.rate_max_override = 7;
  Instance inst = generate_instance(cfg);
  for (const auto& link : inst.network.links) {
    CHECK(link.delay == 0.0);
    CHECK(link.capacity == 1e9);
  }
  for (const auto& c : inst.network.cloud) CHECK(c.mu == 7.0);
  for (const auto& svc : inst.services) {
    CHECK(svc.rates[0] == 7.0);
    CHECK(svc.deadline == 1e9);
  }
}

TEST_CASE("generated instances survive a file round trip bit-exactly") {
  GeneratorConfig cfg;
  cfg.services = 10;
  cfg.seed = 4242;
  Instance inst = generate_instance(cfg);
  std::string once = instance_to_json(inst);
  CHECK(instance_to_json(instance_from_json(once)) == once);
}

TEST_CASE("config round trip preserves every field") {
  GeneratorConfig cfg;
  cfg.services = 7;
  cfg.seed = 99;
  cfg.admissible_count = 3;
  cfg.zero_link_delay = true;
  cfg.fixed_node_capacity = 12.5;
  cfg.dest_mode = DestMode::Random;
  GeneratorConfig back = generator_config_from_json(generator_config_to_json(cfg));
  CHECK(back.services == cfg.services);
  CHECK(back.seed == cfg.seed);
  CHECK(back.admissible_count == cfg.admissible_count);
  CHECK(back.zero_link_delay == cfg.zero_link_delay);
  REQUIRE(back.fixed_node_capacity.has_value());
  CHECK(*back.fixed_node_capacity == 12.5);
  CHECK(back.dest_mode == DestMode::Random);
  // Identical instances from identical configs.
  CHECK(instance_to_json(generate_instance(cfg)) ==
        instance_to_json(generate_instance(back)));
}

TEST_CASE("builtin topology shape") {
  Network net = builtin_topology();
  CHECK(net.node_count() == 28);
  CHECK(net.cloud.size() == 6);
  CHECK(net.link_count() == 2 * (20 + 14 + 8));
}
