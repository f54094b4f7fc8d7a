#ifndef SLICERLP_FLOW_DECOMPOSE_HPP
#define SLICERLP_FLOW_DECOMPOSE_HPP

#include <map>
#include <stdexcept>
#include <vector>

#include "slicerlp/model.hpp"

namespace slicerlp {

struct FlowError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Decomposition {
  std::vector<PathShare> paths;       // fractions sum to 1 within 1e-6
  double discarded_circulation = 0.0; // flow mass left after no a->b path remains
  double max_path_delay = 0.0;
};

// Splits a unit a->b flow into at most |L| simple paths by shortest-delay
// peeling: repeatedly extract the minimum-delay path in the positive
// support and subtract its bottleneck fraction. Whatever remains once b
// is unreachable is a circulation and is dropped (reported). Throws
// FlowError when the flow does not conserve a unit a->b within 1e-7.
Decomposition decompose_flow(const Network& net, const std::map<LinkId, double>& flows,
                             NodeId a, NodeId b);

struct RecomputedDelays {
  std::map<SegmentKey, double> stage_delay;  // max path delay per segment
  std::map<int, double> service_delay;       // NFV + communication per service
};

// True per-stage communication delays of a routing: each segment's flow is
// path-decomposed and charged the largest path delay, then NFV delays of
// the chosen hosts are added per service.
RecomputedDelays recompute_delays(const Instance& inst, const Placement& placement,
                                  const std::map<SegmentKey, std::map<LinkId, double>>& flows,
                                  RoutingPlan* plan_out = nullptr);

// Hosting endpoints of segment (k,s): S(k)/D(k) at the chain ends, the
// placed nodes in between.
std::pair<NodeId, NodeId> segment_endpoints(const Instance& inst, const Placement& placement,
                                            int k, int s);

}  // namespace slicerlp

#endif  // SLICERLP_FLOW_DECOMPOSE_HPP
