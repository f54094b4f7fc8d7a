#include "slicerlp/flow_decompose.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace slicerlp {

namespace {

constexpr double kFlowEps = 1e-9;
constexpr double kConservationTol = 1e-7;

// Min-delay path a->b restricted to links with positive residual flow.
// Returns link ids along the path, or empty when b is unreachable.
std::vector<LinkId> min_delay_support_path(const Network& net,
                                           const std::map<LinkId, double>& residual,
                                           NodeId a, NodeId b) {
  const int n = net.node_count();
  std::vector<double> dist(n, std::numeric_limits<double>::infinity());
  std::vector<LinkId> via(n, -1);
  dist[a] = 0.0;
  using Entry = std::pair<double, int>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  heap.push({0.0, a});
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (d > dist[u]) continue;
    for (const auto& [li, f] : residual) {
      if (f <= kFlowEps) continue;
      const Link& l = net.links[li];
      if (l.from != u) continue;
      double nd = d + l.delay;
      if (nd < dist[l.to] - 1e-15) {
        dist[l.to] = nd;
        via[l.to] = li;
        heap.push({nd, l.to});
      }
    }
  }
  if (std::isinf(dist[b])) return {};
  std::vector<LinkId> path;
  for (NodeId cur = b; cur != a;) {
    LinkId li = via[cur];
    path.push_back(li);
    cur = net.links[li].from;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace

Decomposition decompose_flow(const Network& net, const std::map<LinkId, double>& flows,
                             NodeId a, NodeId b) {
  Decomposition out;
  if (a == b) {
    PathShare trivial;
    trivial.nodes = {a};
    trivial.fraction = 1.0;
    out.paths.push_back(std::move(trivial));
    for (const auto& [li, f] : flows) out.discarded_circulation += std::max(f, 0.0);
    return out;
  }

  // Conservation check: unit divergence at a and b, balance elsewhere.
  std::vector<double> net_out(net.node_count(), 0.0);
  for (const auto& [li, f] : flows) {
    if (f < -kConservationTol) throw FlowError("negative flow on a link");
    const Link& l = net.links[li];
    net_out[l.from] += f;
    net_out[l.to] -= f;
  }
  for (NodeId i = 0; i < net.node_count(); ++i) {
    double expect = (i == a) ? 1.0 : (i == b) ? -1.0 : 0.0;
    if (std::abs(net_out[i] - expect) > kConservationTol) {
      throw FlowError("flow conservation violated at node " + net.node_names[i]);
    }
  }

  std::map<LinkId, double> residual;
  for (const auto& [li, f] : flows) {
    if (f > kFlowEps) residual[li] = f;
  }

  double extracted = 0.0;
  const int max_paths = net.link_count() + 1;
  while (extracted < 1.0 - 1e-9 && static_cast<int>(out.paths.size()) < max_paths) {
    auto links = min_delay_support_path(net, residual, a, b);
    if (links.empty()) break;
    double bottleneck = 1.0 - extracted;
    for (LinkId li : links) bottleneck = std::min(bottleneck, residual[li]);
    PathShare share;
    share.links = links;
    share.nodes.push_back(a);
    for (LinkId li : links) {
      share.delay += net.links[li].delay;
      share.nodes.push_back(net.links[li].to);
      double& r = residual[li];
      r -= bottleneck;
      if (r <= kFlowEps) residual.erase(li);
    }
    share.fraction = bottleneck;
    extracted += bottleneck;
    out.max_path_delay = std::max(out.max_path_delay, share.delay);
    out.paths.push_back(std::move(share));
  }

  for (const auto& [li, f] : residual) out.discarded_circulation += f;
  if (std::abs(extracted - 1.0) > 1e-6) {
    throw FlowError("path fractions sum to " + std::to_string(extracted) + ", expected 1");
  }
  // Absorb the last sliver of numerical drift into the final path.
  if (!out.paths.empty()) out.paths.back().fraction += 1.0 - extracted;
  return out;
}

std::pair<NodeId, NodeId> segment_endpoints(const Instance& inst, const Placement& placement,
                                            int k, int s) {
  const ServiceRequest& svc = inst.services[k];
  NodeId from = (s == 0) ? svc.src : placement.hosts[k][s - 1];
  NodeId to = (s == svc.chain_length()) ? svc.dst : placement.hosts[k][s];
  return {from, to};
}

RecomputedDelays recompute_delays(const Instance& inst, const Placement& placement,
                                  const std::map<SegmentKey, std::map<LinkId, double>>& flows,
                                  RoutingPlan* plan_out) {
  RecomputedDelays out;
  for (int k = 0; k < inst.service_count(); ++k) {
    const ServiceRequest& svc = inst.services[k];
    double nfv = 0.0;
    for (int s = 1; s <= svc.chain_length(); ++s) {
      nfv += svc.stages[s - 1].delay_at(placement.hosts[k][s - 1]).value();
    }
    double comm = 0.0;
    for (int s = 0; s <= svc.chain_length(); ++s) {
      SegmentKey key{k, s};
      auto [from, to] = segment_endpoints(inst, placement, k, s);
      std::map<LinkId, double> segment;
      if (auto it = flows.find(key); it != flows.end()) segment = it->second;
      Decomposition dec = decompose_flow(inst.network, segment, from, to);
      out.stage_delay[key] = dec.max_path_delay;
      comm += dec.max_path_delay;
      if (plan_out != nullptr) {
        plan_out->flows[key] = segment;
        plan_out->stage_delay[key] = dec.max_path_delay;
        plan_out->discarded_circulation[key] = dec.discarded_circulation;
        if (static_cast<int>(dec.paths.size()) > inst.path_budget) {
          plan_out->paths_exceed_budget.push_back(key);
        }
        plan_out->paths[key] = std::move(dec.paths);
      }
    }
    out.service_delay[k] = nfv + comm;
    if (plan_out != nullptr) plan_out->service_delay[k] = nfv + comm;
  }
  return out;
}

}  // namespace slicerlp
