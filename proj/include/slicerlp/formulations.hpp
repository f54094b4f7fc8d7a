#ifndef SLICERLP_FORMULATIONS_HPP
#define SLICERLP_FORMULATIONS_HPP

#include <map>
#include <optional>
#include <vector>

#include "slicerlp/lp_model.hpp"
#include "slicerlp/model.hpp"

namespace slicerlp {

enum class VarKind : int {
  Placement,   // x_{v,s}(k)
  Activation,  // y_v
  PathRate,    // r(k,s,p)      (multi-path relaxation only)
  LinkFlow,    // r_ij(k,s,p)
  LinkUse,     // z_ij(k,s,p)   (multi-path relaxation only)
  StageDelay,  // theta(k,s)
};

// Semantic coordinates of one LP variable. `k` and `s` index services and
// segments (s = 0..l_k; placement stages use s = 1..l_k); `p` is the path
// slot and `link` a Network link index where applicable.
struct VarKey {
  VarKind kind = VarKind::Placement;
  int node = -1;
  int k = -1;
  int s = -1;
  int p = -1;
  int link = -1;
  auto operator<=>(const VarKey&) const = default;

  static VarKey x(int v, int k, int s) { return {VarKind::Placement, v, k, s, -1, -1}; }
  static VarKey y(int v) { return {VarKind::Activation, v, -1, -1, -1, -1}; }
  static VarKey rate(int k, int s, int p) { return {VarKind::PathRate, -1, k, s, p, -1}; }
  static VarKey flow(int k, int s, int p, int link) {
    return {VarKind::LinkFlow, -1, k, s, p, link};
  }
  static VarKey use(int k, int s, int p, int link) {
    return {VarKind::LinkUse, -1, k, s, p, link};
  }
  static VarKey theta(int k, int s) { return {VarKind::StageDelay, -1, k, s, -1, -1}; }
};

// Bijection between semantic keys and LpModel variable ids.
class VarIndex {
 public:
  int add(const VarKey& key, int id);
  std::optional<int> find(const VarKey& key) const;
  int at(const VarKey& key) const;  // throws on missing key
  const VarKey& key_of(int id) const;
  const std::map<VarKey, int>& entries() const { return key_to_id_; }
  std::string describe(int id, const Instance& inst) const;

 private:
  std::map<VarKey, int> key_to_id_;
  std::vector<VarKey> id_to_key_;
};

struct BuiltModel {
  LpModel model;
  VarIndex index;
};

// Compact relaxation: one aggregated flow per segment (path slot p = 1),
// stage delay pinned to the flow-weighted link delay. Variables x, y and
// flows live in [0,1]; per-segment conservation couples flows to the
// placement variables, with the virtual endpoint placements at S(k)/D(k)
// folded into the right-hand sides.
BuiltModel build_lp2(const Instance& inst);

// Natural relaxation of the path-based formulation: per-path rate, link
// flow and link use variables with the bilinear coupling replaced by its
// standard linearization, and per-path lower bounds on the stage delay.
BuiltModel build_lp1(const Instance& inst);

// Collapses all placement variables onto the given placement and reduces
// the objective to the total communication delay (unit weight per
// service). Throws std::invalid_argument when the placement violates the
// hosting or capacity constraints.
LpModel fix_placement(const LpModel& model, const VarIndex& idx, const Instance& inst,
                      const Placement& placement);

// Reweights the stage-delay objective to sum_k w_k * theta_L(k). Requires
// a placement-fixed model and weights >= 1.
LpModel set_routing_weights(const LpModel& model, const VarIndex& idx,
                            const std::vector<double>& weights);

// Solution views.
struct PlacementValue {
  int k;
  int s;
  NodeId node;
  double value;
};
// All placement-variable values ordered by (k, s, node).
std::vector<PlacementValue> placement_values(const VarIndex& idx,
                                             const std::vector<double>& values);
// Aggregated link flows of a segment (path slots summed).
std::map<LinkId, double> segment_flows(const VarIndex& idx, const std::vector<double>& values,
                                       int k, int s);
// Sum of all stage-delay variables, and per-service subtotals.
double total_lp_delay(const VarIndex& idx, const std::vector<double>& values);
std::vector<double> per_service_lp_delay(const VarIndex& idx, const std::vector<double>& values,
                                         int service_count);

}  // namespace slicerlp

#endif  // SLICERLP_FORMULATIONS_HPP
