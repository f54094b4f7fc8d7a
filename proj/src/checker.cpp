#include "slicerlp/checker.hpp"

#include <cmath>
#include <map>
#include <set>

namespace slicerlp {

namespace {

std::string seg_name(const Instance& inst, int k, int s) {
  return "service " + std::to_string(inst.services[k].id) + ", segment " + std::to_string(s);
}

}  // namespace

std::vector<std::string> verify_full_solution(const Instance& inst, const Placement& placement,
                                              const RoutingPlan& plan, double tol) {
  std::vector<std::string> bad;
  const Network& net = inst.network;

  // Hosting: every function on exactly one admissible cloud node (1)-(2),
  // node capacities (3).
  if (static_cast<int>(placement.hosts.size()) != inst.service_count()) {
    bad.push_back("placement: wrong number of services");
    return bad;
  }
  std::map<NodeId, double> node_load;
  for (int k = 0; k < inst.service_count(); ++k) {
    const ServiceRequest& svc = inst.services[k];
    if (static_cast<int>(placement.hosts[k].size()) != svc.chain_length()) {
      bad.push_back("placement: wrong chain length for service " + std::to_string(svc.id));
      continue;
    }
    for (int s = 1; s <= svc.chain_length(); ++s) {
      NodeId v = placement.hosts[k][s - 1];
      bool admissible = false;
      for (const auto& a : svc.stages[s - 1].admissible) {
        if (a.node == v) admissible = true;
      }
      if (!admissible) {
        bad.push_back("placement: inadmissible host for service " + std::to_string(svc.id) +
                      " stage " + std::to_string(s));
      }
      node_load[v] += svc.rates[s];
    }
  }
  for (const auto& [v, load] : node_load) {
    double mu = -1.0;
    for (const auto& c : net.cloud) {
      if (c.node == v) mu = c.mu;
    }
    if (mu < 0.0) {
      bad.push_back("placement: host " + net.node_names[v] + " is not a cloud node");
    } else if (load > mu + tol) {
      bad.push_back("capacity: node " + net.node_names[v] + " overloaded");
    }
  }

  // Paths: structure, conservation, and fraction totals per segment.
  std::vector<double> link_load(net.link_count(), 0.0);
  for (int k = 0; k < inst.service_count(); ++k) {
    const ServiceRequest& svc = inst.services[k];
    for (int s = 0; s <= svc.chain_length(); ++s) {
      SegmentKey key{k, s};
      NodeId origin = (s == 0) ? svc.src : placement.hosts[k][s - 1];
      NodeId sink = (s == svc.chain_length()) ? svc.dst : placement.hosts[k][s];

      auto it = plan.paths.find(key);
      if (it == plan.paths.end()) {
        bad.push_back(seg_name(inst, k, s) + ": no path decomposition");
        continue;
      }
      double total = 0.0;
      std::vector<double> divergence(net.node_count(), 0.0);
      for (const PathShare& path : it->second) {
        if (path.fraction < -tol) {
          bad.push_back(seg_name(inst, k, s) + ": negative path fraction");
        }
        total += path.fraction;
        if (path.nodes.empty() || path.nodes.front() != origin) {
          bad.push_back(seg_name(inst, k, s) + ": path does not start at the segment origin");
          continue;
        }
        if (path.nodes.back() != sink) {
          bad.push_back(seg_name(inst, k, s) + ": path does not end at the segment sink");
          continue;
        }
        if (path.links.size() + 1 != path.nodes.size()) {
          bad.push_back(seg_name(inst, k, s) + ": node/link sequence mismatch");
          continue;
        }
        std::set<NodeId> visited;
        bool broken = false;
        for (size_t i = 0; i < path.links.size(); ++i) {
          LinkId li = path.links[i];
          if (li < 0 || li >= net.link_count() || net.links[li].from != path.nodes[i] ||
              net.links[li].to != path.nodes[i + 1]) {
            bad.push_back(seg_name(inst, k, s) + ": path uses a nonexistent link");
            broken = true;
            break;
          }
        }
        if (broken) continue;
        for (NodeId nd : path.nodes) {
          if (!visited.insert(nd).second) {
            bad.push_back(seg_name(inst, k, s) + ": path revisits a node");
            break;
          }
        }
        for (LinkId li : path.links) {
          link_load[li] += svc.rates[s] * path.fraction;
          divergence[net.links[li].from] += path.fraction;
          divergence[net.links[li].to] -= path.fraction;
        }
      }
      if (std::abs(total - 1.0) > tol) {
        bad.push_back(seg_name(inst, k, s) + ": path fractions sum to " + std::to_string(total));
      }
      // Conservation of the reconstructed flow.
      for (NodeId i = 0; i < net.node_count(); ++i) {
        double expect = 0.0;
        if (origin != sink) expect = (i == origin) ? 1.0 : (i == sink) ? -1.0 : 0.0;
        if (std::abs(divergence[i] - expect) > tol) {
          bad.push_back(seg_name(inst, k, s) + ": conservation violated at " +
                        net.node_names[i]);
          break;
        }
      }
    }
  }

  for (int li = 0; li < net.link_count(); ++li) {
    if (link_load[li] > net.links[li].capacity + tol) {
      bad.push_back("capacity: link " + std::to_string(li) + " overloaded (" +
                    std::to_string(link_load[li]) + " > " +
                    std::to_string(net.links[li].capacity) + ")");
    }
  }

  // Delays: recompute from the paths and compare against the plan's own
  // accounting and the deadlines.
  for (int k = 0; k < inst.service_count(); ++k) {
    const ServiceRequest& svc = inst.services[k];
    double nfv = 0.0;
    for (int s = 1; s <= svc.chain_length(); ++s) {
      NodeId v = placement.hosts[k][s - 1];
      for (const auto& a : svc.stages[s - 1].admissible) {
        if (a.node == v) nfv += a.nfv_delay;
      }
    }
    double comm = 0.0;
    for (int s = 0; s <= svc.chain_length(); ++s) {
      SegmentKey key{k, s};
      auto it = plan.paths.find(key);
      if (it == plan.paths.end()) continue;
      double worst = 0.0;
      for (const PathShare& path : it->second) {
        double d = 0.0;
        for (LinkId li : path.links) d += net.links[li].delay;
        if (std::abs(d - path.delay) > tol) {
          bad.push_back(seg_name(inst, k, s) + ": recorded path delay differs");
        }
        if (path.fraction > tol) worst = std::max(worst, d);
      }
      auto sd = plan.stage_delay.find(key);
      if (sd != plan.stage_delay.end() && std::abs(sd->second - worst) > tol) {
        bad.push_back(seg_name(inst, k, s) + ": stage delay differs from max path delay");
      }
      comm += worst;
    }
    double e2e = nfv + comm;
    auto rec = plan.service_delay.find(k);
    if (rec != plan.service_delay.end() && std::abs(rec->second - e2e) > tol) {
      bad.push_back("service " + std::to_string(svc.id) + ": recorded E2E delay differs");
    }
    if (e2e > svc.deadline + tol) {
      bad.push_back("service " + std::to_string(svc.id) + ": deadline exceeded (" +
                    std::to_string(e2e) + " > " + std::to_string(svc.deadline) + ")");
    }
  }

  return bad;
}

}  // namespace slicerlp
