#ifndef SLICERLP_TESTS_SUPPORT_HPP
#define SLICERLP_TESTS_SUPPORT_HPP

#include "slicerlp/model.hpp"

namespace slicerlp::testing {

// The two-parallel-link toy: S -> D over link a (capacity 0.5, delay 1)
// and link b (capacity 0.5, delay 2); one chainless unit-rate service.
inline Instance two_link_toy(double deadline = 2.0) {
  Instance inst;
  inst.network.node_names = {"S", "D"};
  inst.network.links.push_back({0, 1, 1.0, 0.5});
  inst.network.links.push_back({0, 1, 2.0, 0.5});
  ServiceRequest svc;
  svc.id = 1;
  svc.src = 0;
  svc.dst = 1;
  svc.rates = {1.0};
  svc.deadline = deadline;
  inst.services.push_back(svc);
  inst.path_budget = 2;
  inst.sigma = 0.001;
  return inst;
}

// Line S -> v1 -> ... with one cloud node on the path; single service with
// one stage admissible only on that node.
inline Instance single_host_line(double mu = 10.0, double rate = 5.0, double nfv = 4.0,
                                 double deadline = 100.0) {
  Instance inst;
  inst.network.node_names = {"S", "v", "D"};
  inst.network.links.push_back({0, 1, 1.0, 100.0});
  inst.network.links.push_back({1, 2, 2.0, 100.0});
  inst.network.links.push_back({1, 0, 1.0, 100.0});
  inst.network.links.push_back({2, 1, 2.0, 100.0});
  inst.network.cloud.push_back({1, mu});
  ServiceRequest svc;
  svc.id = 1;
  svc.src = 0;
  svc.dst = 2;
  Stage stage;
  stage.admissible.push_back({1, nfv});
  svc.stages.push_back(stage);
  svc.rates = {rate, rate};
  svc.deadline = deadline;
  inst.services.push_back(svc);
  return inst;
}

// Two cloud candidates for a single one-stage service; v1 is closer but
// undersized, v2 has room. The relaxation splits between them.
inline Instance two_candidate_instance(double mu1, double mu2, double rate) {
  Instance inst;
  inst.network.node_names = {"S", "v1", "v2", "D"};
  auto add = [&](int a, int b, double delay) {
    inst.network.links.push_back({a, b, delay, 1000.0});
    inst.network.links.push_back({b, a, delay, 1000.0});
  };
  add(0, 1, 1.0);
  add(0, 2, 2.0);
  add(1, 3, 1.0);
  add(2, 3, 2.0);
  add(1, 2, 1.0);
  inst.network.cloud.push_back({1, mu1});
  inst.network.cloud.push_back({2, mu2});
  ServiceRequest svc;
  svc.id = 1;
  svc.src = 0;
  svc.dst = 3;
  Stage stage;
  stage.admissible.push_back({1, 3.0});
  stage.admissible.push_back({2, 3.0});
  svc.stages.push_back(stage);
  svc.rates = {rate, rate};
  svc.deadline = 1000.0;
  inst.services.push_back(svc);
  return inst;
}

}  // namespace slicerlp::testing

#endif  // SLICERLP_TESTS_SUPPORT_HPP
