#include "slicerlp/formulations.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <tuple>

namespace slicerlp {

int VarIndex::add(const VarKey& key, int id) {
  if (id != static_cast<int>(id_to_key_.size())) {
    throw std::logic_error("VarIndex: ids must be added in model order");
  }
  auto [it, inserted] = key_to_id_.insert({key, id});
  if (!inserted) throw std::logic_error("VarIndex: duplicate key");
  id_to_key_.push_back(key);
  return id;
}

std::optional<int> VarIndex::find(const VarKey& key) const {
  auto it = key_to_id_.find(key);
  if (it == key_to_id_.end()) return std::nullopt;
  return it->second;
}

int VarIndex::at(const VarKey& key) const {
  auto id = find(key);
  if (!id.has_value()) throw std::out_of_range("VarIndex: unknown key");
  return *id;
}

const VarKey& VarIndex::key_of(int id) const { return id_to_key_.at(id); }

std::string VarIndex::describe(int id, const Instance& inst) const {
  const VarKey& key = id_to_key_.at(id);
  const auto& names = inst.network.node_names;
  auto node_name = [&](int v) { return v >= 0 ? names[v] : std::string("?"); };
  switch (key.kind) {
    case VarKind::Placement:
      return "x(" + node_name(key.node) + ",k" + std::to_string(key.k) + ",s" +
             std::to_string(key.s) + ")";
    case VarKind::Activation:
      return "y(" + node_name(key.node) + ")";
    case VarKind::PathRate:
      return "r(k" + std::to_string(key.k) + ",s" + std::to_string(key.s) + ",p" +
             std::to_string(key.p) + ")";
    case VarKind::LinkFlow:
      return "r_l" + std::to_string(key.link) + "(k" + std::to_string(key.k) + ",s" +
             std::to_string(key.s) + ",p" + std::to_string(key.p) + ")";
    case VarKind::LinkUse:
      return "z_l" + std::to_string(key.link) + "(k" + std::to_string(key.k) + ",s" +
             std::to_string(key.s) + ",p" + std::to_string(key.p) + ")";
    case VarKind::StageDelay:
      return "theta(k" + std::to_string(key.k) + ",s" + std::to_string(key.s) + ")";
  }
  return "?";
}

namespace {

struct Builder {
  const Instance& inst;
  LpModel model;
  VarIndex index;

  int add_var(const VarKey& key, double lo, double hi, double obj) {
    int id = model.add_variable(lo, hi, obj);
    index.add(key, id);
    return id;
  }

  // Placement and activation variables plus constraints (1)-(3). Shared by
  // both relaxations.
  void placement_block() {
    const Network& net = inst.network;
    const double sigma = inst.sigma;

    for (int k = 0; k < inst.service_count(); ++k) {
      const ServiceRequest& svc = inst.services[k];
      for (int s = 1; s <= svc.chain_length(); ++s) {
        for (const auto& adm : svc.stages[s - 1].admissible) {
          add_var(VarKey::x(adm.node, k, s), 0.0, 1.0, sigma * adm.nfv_delay);
        }
      }
    }
    for (const auto& c : net.cloud) {
      add_var(VarKey::y(c.node), 0.0, 1.0, 1.0);
    }

    // (1): every function hosted exactly once.
    for (int k = 0; k < inst.service_count(); ++k) {
      const ServiceRequest& svc = inst.services[k];
      for (int s = 1; s <= svc.chain_length(); ++s) {
        std::vector<std::pair<int, double>> row;
        for (const auto& adm : svc.stages[s - 1].admissible) {
          row.push_back({index.at(VarKey::x(adm.node, k, s)), 1.0});
        }
        model.add_constraint(std::move(row), RowSense::Equal, 1.0);
      }
    }
    // (2): hosting requires activation.
    for (int k = 0; k < inst.service_count(); ++k) {
      const ServiceRequest& svc = inst.services[k];
      for (int s = 1; s <= svc.chain_length(); ++s) {
        for (const auto& adm : svc.stages[s - 1].admissible) {
          model.add_constraint({{index.at(VarKey::x(adm.node, k, s)), 1.0},
                                {index.at(VarKey::y(adm.node)), -1.0}},
                               RowSense::LessEqual, 0.0);
        }
      }
    }
    // (3): node capacity.
    for (const auto& c : net.cloud) {
      std::vector<std::pair<int, double>> row;
      for (int k = 0; k < inst.service_count(); ++k) {
        const ServiceRequest& svc = inst.services[k];
        for (int s = 1; s <= svc.chain_length(); ++s) {
          if (auto id = index.find(VarKey::x(c.node, k, s))) {
            row.push_back({*id, svc.rates[s]});
          }
        }
      }
      if (row.empty()) continue;
      row.push_back({index.at(VarKey::y(c.node)), -c.mu});
      model.add_constraint(std::move(row), RowSense::LessEqual, 0.0);
    }
  }

  // Conservation row for segment (k,s) at node i over the given per-link
  // flow variables. Folds the virtual placements at S(k)/D(k) into the rhs.
  void conservation_row(int k, int s, NodeId i,
                        const std::vector<int>& link_vars) {
    const Network& net = inst.network;
    const ServiceRequest& svc = inst.services[k];
    std::vector<std::pair<int, double>> row;
    for (int li = 0; li < net.link_count(); ++li) {
      if (net.links[li].to == i) row.push_back({link_vars[li], 1.0});
      if (net.links[li].from == i) row.push_back({link_vars[li], -1.0});
    }
    // Incoming minus outgoing equals x_{i,s+1} - x_{i,s}; variable parts
    // move to the left-hand side.
    double rhs = 0.0;
    if (s == svc.chain_length()) {
      if (i == svc.dst) rhs += 1.0;
    } else if (auto id = index.find(VarKey::x(i, k, s + 1))) {
      row.push_back({*id, -1.0});
    }
    if (s == 0) {
      if (i == svc.src) rhs -= 1.0;
    } else if (auto id = index.find(VarKey::x(i, k, s))) {
      row.push_back({*id, 1.0});
    }
    if (row.empty() && rhs == 0.0) return;
    model.add_constraint(std::move(row), RowSense::Equal, rhs);
  }

  // (9): NFV delay plus communication delay within the deadline.
  void deadline_rows() {
    for (int k = 0; k < inst.service_count(); ++k) {
      const ServiceRequest& svc = inst.services[k];
      std::vector<std::pair<int, double>> row;
      for (int s = 0; s <= svc.chain_length(); ++s) {
        row.push_back({index.at(VarKey::theta(k, s)), 1.0});
      }
      for (int s = 1; s <= svc.chain_length(); ++s) {
        for (const auto& adm : svc.stages[s - 1].admissible) {
          row.push_back({index.at(VarKey::x(adm.node, k, s)), adm.nfv_delay});
        }
      }
      model.add_constraint(std::move(row), RowSense::LessEqual, svc.deadline);
    }
  }
};

}  // namespace

BuiltModel build_lp2(const Instance& inst) {
  {
    auto violations = validate_instance(inst);
    if (!violations.empty()) {
      throw std::invalid_argument("build_lp2: invalid instance: " + violations.front().entity +
                                  ": " + violations.front().rule);
    }
  }
  Builder b{inst};
  const Network& net = inst.network;
  const double sigma = inst.sigma;

  b.placement_block();

  // Aggregated per-segment link flows (path slot 1) and stage delays.
  for (int k = 0; k < inst.service_count(); ++k) {
    const ServiceRequest& svc = inst.services[k];
    for (int s = 0; s <= svc.chain_length(); ++s) {
      for (int li = 0; li < net.link_count(); ++li) {
        b.add_var(VarKey::flow(k, s, 1, li), 0.0, 1.0, 0.0);
      }
    }
  }
  for (int k = 0; k < inst.service_count(); ++k) {
    const ServiceRequest& svc = inst.services[k];
    for (int s = 0; s <= svc.chain_length(); ++s) {
      b.add_var(VarKey::theta(k, s), 0.0, kLpInfinity, sigma);
    }
  }

  // (6'): link capacity over aggregated flows.
  for (int li = 0; li < net.link_count(); ++li) {
    std::vector<std::pair<int, double>> row;
    for (int k = 0; k < inst.service_count(); ++k) {
      const ServiceRequest& svc = inst.services[k];
      for (int s = 0; s <= svc.chain_length(); ++s) {
        row.push_back({b.index.at(VarKey::flow(k, s, 1, li)), svc.rates[s]});
      }
    }
    if (row.empty()) continue;
    b.model.add_constraint(std::move(row), RowSense::LessEqual, net.links[li].capacity);
  }

  // (7'): conservation per segment and node.
  for (int k = 0; k < inst.service_count(); ++k) {
    const ServiceRequest& svc = inst.services[k];
    for (int s = 0; s <= svc.chain_length(); ++s) {
      std::vector<int> link_vars(net.link_count());
      for (int li = 0; li < net.link_count(); ++li) {
        link_vars[li] = b.index.at(VarKey::flow(k, s, 1, li));
      }
      for (NodeId i = 0; i < net.node_count(); ++i) {
        b.conservation_row(k, s, i, link_vars);
      }
    }
  }

  // (8'): stage delay equals the flow-weighted link delay.
  for (int k = 0; k < inst.service_count(); ++k) {
    const ServiceRequest& svc = inst.services[k];
    for (int s = 0; s <= svc.chain_length(); ++s) {
      std::vector<std::pair<int, double>> row;
      row.push_back({b.index.at(VarKey::theta(k, s)), 1.0});
      for (int li = 0; li < net.link_count(); ++li) {
        double d = net.links[li].delay;
        if (d != 0.0) row.push_back({b.index.at(VarKey::flow(k, s, 1, li)), -d});
      }
      b.model.add_constraint(std::move(row), RowSense::Equal, 0.0);
    }
  }

  b.deadline_rows();
  return {std::move(b.model), std::move(b.index)};
}

BuiltModel build_lp1(const Instance& inst) {
  {
    auto violations = validate_instance(inst);
    if (!violations.empty()) {
      throw std::invalid_argument("build_lp1: invalid instance: " + violations.front().entity +
                                  ": " + violations.front().rule);
    }
  }
  Builder b{inst};
  const Network& net = inst.network;
  const int P = inst.path_budget;
  const double sigma = inst.sigma;

  b.placement_block();

  for (int k = 0; k < inst.service_count(); ++k) {
    const ServiceRequest& svc = inst.services[k];
    for (int s = 0; s <= svc.chain_length(); ++s) {
      for (int p = 1; p <= P; ++p) {
        b.add_var(VarKey::rate(k, s, p), 0.0, 1.0, 0.0);
      }
    }
  }
  for (int k = 0; k < inst.service_count(); ++k) {
    const ServiceRequest& svc = inst.services[k];
    for (int s = 0; s <= svc.chain_length(); ++s) {
      for (int p = 1; p <= P; ++p) {
        for (int li = 0; li < net.link_count(); ++li) {
          b.add_var(VarKey::flow(k, s, p, li), 0.0, 1.0, 0.0);
        }
        for (int li = 0; li < net.link_count(); ++li) {
          b.add_var(VarKey::use(k, s, p, li), 0.0, 1.0, 0.0);
        }
      }
    }
  }
  for (int k = 0; k < inst.service_count(); ++k) {
    const ServiceRequest& svc = inst.services[k];
    for (int s = 0; s <= svc.chain_length(); ++s) {
      b.add_var(VarKey::theta(k, s), 0.0, kLpInfinity, sigma);
    }
  }

  // (4): path rates of a segment sum to one.
  for (int k = 0; k < inst.service_count(); ++k) {
    const ServiceRequest& svc = inst.services[k];
    for (int s = 0; s <= svc.chain_length(); ++s) {
      std::vector<std::pair<int, double>> row;
      for (int p = 1; p <= P; ++p) row.push_back({b.index.at(VarKey::rate(k, s, p)), 1.0});
      b.model.add_constraint(std::move(row), RowSense::Equal, 1.0);
    }
  }

  // (11)-(13): linearized r_ij = r * z coupling.
  for (int k = 0; k < inst.service_count(); ++k) {
    const ServiceRequest& svc = inst.services[k];
    for (int s = 0; s <= svc.chain_length(); ++s) {
      for (int p = 1; p <= P; ++p) {
        int rate_id = b.index.at(VarKey::rate(k, s, p));
        for (int li = 0; li < net.link_count(); ++li) {
          int flow_id = b.index.at(VarKey::flow(k, s, p, li));
          int use_id = b.index.at(VarKey::use(k, s, p, li));
          b.model.add_constraint({{flow_id, 1.0}, {use_id, -1.0}, {rate_id, -1.0}},
                                 RowSense::GreaterEqual, -1.0);
          b.model.add_constraint({{flow_id, 1.0}, {use_id, -1.0}}, RowSense::LessEqual, 0.0);
          b.model.add_constraint({{flow_id, 1.0}, {rate_id, -1.0}}, RowSense::LessEqual, 0.0);
        }
      }
    }
  }

  // (6): link capacity over all path flows.
  for (int li = 0; li < net.link_count(); ++li) {
    std::vector<std::pair<int, double>> row;
    for (int k = 0; k < inst.service_count(); ++k) {
      const ServiceRequest& svc = inst.services[k];
      for (int s = 0; s <= svc.chain_length(); ++s) {
        for (int p = 1; p <= P; ++p) {
          row.push_back({b.index.at(VarKey::flow(k, s, p, li)), svc.rates[s]});
        }
      }
    }
    if (row.empty()) continue;
    b.model.add_constraint(std::move(row), RowSense::LessEqual, net.links[li].capacity);
  }

  // (7): conservation per segment, path and node, over link-use variables.
  for (int k = 0; k < inst.service_count(); ++k) {
    const ServiceRequest& svc = inst.services[k];
    for (int s = 0; s <= svc.chain_length(); ++s) {
      for (int p = 1; p <= P; ++p) {
        std::vector<int> use_vars(net.link_count());
        for (int li = 0; li < net.link_count(); ++li) {
          use_vars[li] = b.index.at(VarKey::use(k, s, p, li));
        }
        for (NodeId i = 0; i < net.node_count(); ++i) {
          b.conservation_row(k, s, i, use_vars);
        }
      }
    }
  }

  // (14): stage delay dominates every path's delay.
  for (int k = 0; k < inst.service_count(); ++k) {
    const ServiceRequest& svc = inst.services[k];
    for (int s = 0; s <= svc.chain_length(); ++s) {
      int theta_id = b.index.at(VarKey::theta(k, s));
      for (int p = 1; p <= P; ++p) {
        std::vector<std::pair<int, double>> row{{theta_id, 1.0}};
        for (int li = 0; li < net.link_count(); ++li) {
          double d = net.links[li].delay;
          if (d != 0.0) row.push_back({b.index.at(VarKey::use(k, s, p, li)), -d});
        }
        b.model.add_constraint(std::move(row), RowSense::GreaterEqual, 0.0);
      }
    }
  }

  b.deadline_rows();
  return {std::move(b.model), std::move(b.index)};
}

LpModel fix_placement(const LpModel& model, const VarIndex& idx, const Instance& inst,
                      const Placement& placement) {
  {
    auto violations = check_placement(inst, placement);
    if (!violations.empty()) {
      throw std::invalid_argument("fix_placement: " + violations.front().entity + ": " +
                                  violations.front().rule);
    }
  }
  LpModel fixed = model;
  auto activated = placement.activated_nodes();
  for (const auto& [key, id] : idx.entries()) {
    switch (key.kind) {
      case VarKind::Placement: {
        double v = placement.x(key.node, key.k, key.s) ? 1.0 : 0.0;
        fixed.variables[id].lower = v;
        fixed.variables[id].upper = v;
        fixed.variables[id].objective = 0.0;
        break;
      }
      case VarKind::Activation: {
        double v = activated.count(key.node) ? 1.0 : 0.0;
        fixed.variables[id].lower = v;
        fixed.variables[id].upper = v;
        fixed.variables[id].objective = 0.0;
        break;
      }
      case VarKind::StageDelay:
        fixed.variables[id].objective = 1.0;
        break;
      default:
        break;
    }
  }
  return fixed;
}

LpModel set_routing_weights(const LpModel& model, const VarIndex& idx,
                            const std::vector<double>& weights) {
  for (double w : weights) {
    if (!(w >= 1.0)) throw std::invalid_argument("set_routing_weights: weights must be >= 1");
  }
  LpModel out = model;
  for (const auto& [key, id] : idx.entries()) {
    if (key.kind != VarKind::StageDelay) continue;
    if (key.k < 0 || key.k >= static_cast<int>(weights.size())) {
      throw std::invalid_argument("set_routing_weights: missing weight for a service");
    }
    out.variables[id].objective = weights[key.k];
  }
  return out;
}

std::vector<PlacementValue> placement_values(const VarIndex& idx,
                                             const std::vector<double>& values) {
  std::vector<PlacementValue> out;
  for (const auto& [key, id] : idx.entries()) {
    if (key.kind != VarKind::Placement) continue;
    out.push_back({key.k, key.s, key.node, values[id]});
  }
  std::sort(out.begin(), out.end(), [](const PlacementValue& a, const PlacementValue& b) {
    return std::tie(a.k, a.s, a.node) < std::tie(b.k, b.s, b.node);
  });
  return out;
}

std::map<LinkId, double> segment_flows(const VarIndex& idx, const std::vector<double>& values,
                                       int k, int s) {
  std::map<LinkId, double> flows;
  for (const auto& [key, id] : idx.entries()) {
    if (key.kind != VarKind::LinkFlow || key.k != k || key.s != s) continue;
    double v = values[id];
    if (v > 1e-9) flows[key.link] += v;
  }
  return flows;
}

double total_lp_delay(const VarIndex& idx, const std::vector<double>& values) {
  double total = 0.0;
  for (const auto& [key, id] : idx.entries()) {
    if (key.kind == VarKind::StageDelay) total += values[id];
  }
  return total;
}

std::vector<double> per_service_lp_delay(const VarIndex& idx, const std::vector<double>& values,
                                         int service_count) {
  std::vector<double> out(service_count, 0.0);
  for (const auto& [key, id] : idx.entries()) {
    if (key.kind == VarKind::StageDelay) out[key.k] += values[id];
  }
  return out;
}

}  // namespace slicerlp
