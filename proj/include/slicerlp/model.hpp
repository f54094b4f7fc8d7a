#ifndef SLICERLP_MODEL_HPP
#define SLICERLP_MODEL_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace slicerlp {

// Node and link handles are indices into Network::node_names / Network::links.
using NodeId = int;
using LinkId = int;

struct Link {
  NodeId from = -1;
  NodeId to = -1;
  double delay = 0.0;     // expected communication delay
  double capacity = 0.0;  // total data rate the link can carry
};

struct CloudNode {
  NodeId node = -1;
  double mu = 0.0;  // computational capacity (rate units)
};

// Directed network with a designated subset of cloud nodes. Parallel links
// are allowed; a link's identity is its index.
struct Network {
  std::vector<std::string> node_names;
  std::vector<Link> links;
  std::vector<CloudNode> cloud;

  int node_count() const { return static_cast<int>(node_names.size()); }
  int link_count() const { return static_cast<int>(links.size()); }

  std::optional<NodeId> find_node(const std::string& name) const;
  bool is_cloud(NodeId v) const;
  // Capacity mu_v, or nullopt when v is not a cloud node.
  std::optional<double> cloud_capacity(NodeId v) const;
};

// One admissible hosting option for a function stage.
struct AdmissibleNode {
  NodeId node = -1;
  double nfv_delay = 0.0;  // d_{v,s}(k), processing + queuing
};

// A stage of a service function chain. Admissibility is encoded by
// presence: nodes absent from `admissible` cannot host this function.
struct Stage {
  std::vector<AdmissibleNode> admissible;

  std::optional<double> delay_at(NodeId v) const;
};

struct ServiceRequest {
  int id = 0;
  NodeId src = -1;               // S(k), never a cloud node
  NodeId dst = -1;               // D(k), never a cloud node
  std::vector<Stage> stages;     // stage s = 1..l_k (index s-1)
  std::vector<double> rates;     // lambda_0(k)..lambda_{l_k}(k)
  double deadline = 0.0;         // Theta_k

  int chain_length() const { return static_cast<int>(stages.size()); }
  // Number of routed flow segments: stages 0..l_k.
  int segment_count() const { return chain_length() + 1; }
};

struct Instance {
  Network network;
  std::vector<ServiceRequest> services;
  int path_budget = 2;   // P
  double sigma = 0.001;  // delay weight in the objective

  int service_count() const { return static_cast<int>(services.size()); }
  // Sum over services of chain length (the placement-variable budget factor).
  int total_chain_length() const;
};

struct Violation {
  std::string entity;  // e.g. "service 3, stage 2"
  std::string rule;    // e.g. "stage uncoverable"
};

// Checks every structural invariant: endpoint existence, nonnegative
// delays/capacities, cloud membership, weak connectivity, S/D outside the
// cloud set, rate-vector lengths, positive deadlines, coverable stages,
// P >= 1 and sigma > 0. Returns diagnostics; empty means valid.
std::vector<Violation> validate_instance(const Instance& inst);

// Minimal total delay over directed paths a -> b, or nullopt when b is
// unreachable from a. Throws std::out_of_range for unknown node ids.
std::optional<double> shortest_delay(const Network& net, NodeId a, NodeId b);

// Binary VNF placement: host(k, s) is the cloud node chosen for function
// f_s^k (s in 1..l_k). y is derived: a node is activated iff it hosts
// something.
struct Placement {
  // hosts[k][s-1] = cloud node for stage s of service k.
  std::vector<std::vector<NodeId>> hosts;

  bool x(NodeId v, int k, int s) const {
    return hosts[k][s - 1] == v;
  }
  std::set<NodeId> activated_nodes() const;
  int activated_count() const { return static_cast<int>(activated_nodes().size()); }
};

// Placement feasibility per constraints (1)-(3): every stage hosted by an
// admissible node, hosts within node capacities. Empty result = feasible.
std::vector<Violation> check_placement(const Instance& inst, const Placement& p);

struct PathShare {
  std::vector<NodeId> nodes;  // node sequence, front = segment origin
  std::vector<LinkId> links;  // links along the sequence (empty when origin==sink)
  double fraction = 0.0;      // share of the segment's unit flow
  double delay = 0.0;         // sum of link delays
};

// Key for per-segment data: service k, segment s in 0..l_k.
struct SegmentKey {
  int k = 0;
  int s = 0;
  auto operator<=>(const SegmentKey&) const = default;
};

struct RoutingPlan {
  // Fractional link flows r_ij(k,s,1) per segment.
  std::map<SegmentKey, std::map<LinkId, double>> flows;
  // Path decomposition of each segment's flow.
  std::map<SegmentKey, std::vector<PathShare>> paths;
  // Circulation mass discarded during decomposition, per segment.
  std::map<SegmentKey, double> discarded_circulation;
  // Recomputed max-path delay per segment and per-service E2E delay
  // (communication + NFV processing).
  std::map<SegmentKey, double> stage_delay;
  std::map<int, double> service_delay;
  // Segments whose decomposition used more than the instance path budget.
  std::vector<SegmentKey> paths_exceed_budget;
};

}  // namespace slicerlp

#endif  // SLICERLP_MODEL_HPP
