#include "slicerlp/baselines.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <set>

#include "slicerlp/flow_decompose.hpp"
#include "slicerlp/simplex.hpp"

namespace slicerlp {

SolveReport lpr_round(const Instance& inst, const AlgoParams& params) {
  auto t0 = std::chrono::steady_clock::now();
  auto finish = [&](SolveReport& r) {
    r.wall_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
    return r;
  };

  SolveReport report;
  {
    auto violations = validate_instance(inst);
    if (!violations.empty()) {
      bool all_uncoverable = std::all_of(
          violations.begin(), violations.end(),
          [](const Violation& v) { return v.rule == "stage uncoverable"; });
      if (!all_uncoverable) {
        throw std::invalid_argument("lpr_round: invalid instance: " +
                                    violations.front().entity + ": " + violations.front().rule);
      }
      report.status = SolveStatus::PlacementFailed;
      report.detail = violations.front().entity + ": stage uncoverable";
      return finish(report);
    }
  }

  BuiltModel built = build_lp2(inst);
  LpSolution sol = solve_lp(built.model);
  report.lp_solves = 1;
  if (sol.status != LpStatus::Optimal) {
    report.status = SolveStatus::PlacementFailed;
    report.detail = "relaxation is infeasible";
    return finish(report);
  }
  report.relaxation_objective = sol.objective;

  // One-shot rounding: per (k,s) the largest fraction wins, ties to the
  // smallest node index; no consistency re-solve between pins.
  Placement placement;
  placement.hosts.resize(inst.service_count());
  auto values = placement_values(built.index, sol.values);
  for (int k = 0; k < inst.service_count(); ++k) {
    placement.hosts[k].assign(inst.services[k].chain_length(), -1);
  }
  std::map<std::pair<int, int>, double> best;
  for (const auto& pv : values) {
    auto key = std::make_pair(pv.k, pv.s);
    auto it = best.find(key);
    if (it == best.end() || pv.value > it->second + 1e-12) {
      best[key] = pv.value;
      placement.hosts[pv.k][pv.s - 1] = pv.node;
    }
  }

  auto violations = check_placement(inst, placement);
  if (!violations.empty()) {
    report.status = SolveStatus::PlacementFailed;
    report.detail = "one-shot placement: " + violations.front().entity + ": " +
                    violations.front().rule;
    return finish(report);
  }
  report.placement = placement;

  RefinementOutcome refinement = refine_routing(inst, placement, params);
  report.lp_solves += refinement.lp_solves;
  report.refinement_lp_solves = refinement.lp_solves;
  if (!refinement.plan.has_value()) {
    report.status = SolveStatus::RoutingFailed;
    report.detail = refinement.failure;
    return finish(report);
  }
  report.status = SolveStatus::Feasible;
  report.routing = refinement.plan;
  report.activated_nodes = placement.activated_count();
  for (const auto& [k, d] : refinement.plan->service_delay) report.total_delay += d;
  report.objective = report.activated_nodes + inst.sigma * report.total_delay;
  return finish(report);
}

SolveReport lpsrr_round(const Instance& inst, const AlgoParams& params) {
  return solve_with(inst, params, RoundingMode::Static, Relaxation::Compact);
}

SolveReport lprr_lp1(const Instance& inst, const AlgoParams& params) {
  return solve_with(inst, params, RoundingMode::Dynamic, Relaxation::Natural);
}

namespace {

// All simple a->b paths whose links carry positive flow. Empty optional
// when the count exceeds the cap.
std::optional<std::vector<std::vector<LinkId>>> support_paths(
    const Network& net, const std::map<LinkId, double>& flows, NodeId a, NodeId b,
    int max_paths) {
  std::vector<std::vector<std::pair<LinkId, NodeId>>> adj(net.node_count());
  for (const auto& [li, f] : flows) {
    if (f > 1e-9) adj[net.links[li].from].push_back({li, net.links[li].to});
  }
  std::vector<std::vector<LinkId>> out;
  std::vector<LinkId> stack;
  std::vector<char> visited(net.node_count(), 0);
  bool overflow = false;
  std::function<void(NodeId)> dfs = [&](NodeId u) {
    if (overflow) return;
    if (u == b) {
      out.push_back(stack);
      if (static_cast<int>(out.size()) > max_paths) overflow = true;
      return;
    }
    visited[u] = 1;
    for (auto [li, w] : adj[u]) {
      if (visited[w]) continue;
      stack.push_back(li);
      dfs(w);
      stack.pop_back();
    }
    visited[u] = 0;
  };
  dfs(a);
  if (overflow) return std::nullopt;
  return out;
}

}  // namespace

std::optional<MinMaxDecomposition> min_max_delay_decomposition(
    const Network& net, const std::map<LinkId, double>& flows, NodeId a, NodeId b,
    int max_paths) {
  MinMaxDecomposition res;
  if (a == b) return res;

  // Zero-delay support: every decomposition has max delay 0.
  bool all_zero = true;
  for (const auto& [li, f] : flows) {
    if (f > 1e-9 && net.links[li].delay > 1e-12) all_zero = false;
  }
  if (all_zero) return res;

  auto paths = support_paths(net, flows, a, b, max_paths);
  if (!paths.has_value()) return std::nullopt;
  res.support_paths = static_cast<int>(paths->size());
  if (paths->empty()) return std::nullopt;  // conservation rules this out

  std::vector<double> delays(paths->size(), 0.0);
  for (size_t p = 0; p < paths->size(); ++p) {
    for (LinkId li : (*paths)[p]) delays[p] += net.links[li].delay;
  }
  std::vector<double> thresholds = delays;
  std::sort(thresholds.begin(), thresholds.end());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());

  // Feasibility of decomposing within a delay threshold: path fractions
  // over the allowed paths must sum to one without exceeding any link's
  // flow (leftover mass is circulation and may be dropped).
  auto feasible_within = [&](double threshold) {
    LpModel lp;
    std::vector<int> vars(paths->size(), -1);
    for (size_t p = 0; p < paths->size(); ++p) {
      if (delays[p] <= threshold + 1e-12) vars[p] = lp.add_variable(0.0, 1.0, 0.0);
    }
    std::vector<std::pair<int, double>> total;
    for (size_t p = 0; p < paths->size(); ++p) {
      if (vars[p] >= 0) total.push_back({vars[p], 1.0});
    }
    lp.add_constraint(std::move(total), RowSense::Equal, 1.0);
    for (const auto& [li, f] : flows) {
      if (f <= 1e-9) continue;
      std::vector<std::pair<int, double>> row;
      for (size_t p = 0; p < paths->size(); ++p) {
        if (vars[p] < 0) continue;
        for (LinkId pl : (*paths)[p]) {
          if (pl == li) row.push_back({vars[p], 1.0});
        }
      }
      if (!row.empty()) lp.add_constraint(std::move(row), RowSense::LessEqual, f + 1e-9);
    }
    return solve_lp(lp).status == LpStatus::Optimal;
  };

  // The thresholds are few; scan them in increasing order.
  for (double t : thresholds) {
    if (feasible_within(t)) {
      res.max_delay = t;
      return res;
    }
  }
  return std::nullopt;
}

OracleResult exact_enumerate(const Instance& inst, const AlgoParams& params,
                             const OracleLimits& limits) {
  OracleResult result;
  {
    auto violations = validate_instance(inst);
    if (!violations.empty()) {
      bool all_uncoverable = std::all_of(
          violations.begin(), violations.end(),
          [](const Violation& v) { return v.rule == "stage uncoverable"; });
      if (!all_uncoverable) {
        throw std::invalid_argument("exact_enumerate: invalid instance: " +
                                    violations.front().entity + ": " + violations.front().rule);
      }
      result.status = OracleStatus::Infeasible;
      result.detail = "a stage has no admissible node";
      return result;
    }
  }

  // Placement slots in (k, s) order with their candidate hosts.
  struct Slot {
    int k;
    int s;
    double rate;
    std::vector<NodeId> candidates;
  };
  std::vector<Slot> slots;
  double product = 1.0;
  for (int k = 0; k < inst.service_count(); ++k) {
    const ServiceRequest& svc = inst.services[k];
    for (int s = 1; s <= svc.chain_length(); ++s) {
      Slot slot{k, s, svc.rates[s], {}};
      for (const auto& adm : svc.stages[s - 1].admissible) slot.candidates.push_back(adm.node);
      std::sort(slot.candidates.begin(), slot.candidates.end());
      product *= static_cast<double>(slot.candidates.size());
      slots.push_back(std::move(slot));
    }
  }
  if (product > static_cast<double>(limits.max_placements)) {
    result.status = OracleStatus::LimitExceeded;
    result.detail = "placement product exceeds max_placements";
    return result;
  }

  BuiltModel built = build_lp2(inst);
  std::map<NodeId, double> mu;
  for (const auto& c : inst.network.cloud) mu[c.node] = c.mu;

  bool limit_hit = false;
  Placement current;
  current.hosts.resize(inst.service_count());
  for (int k = 0; k < inst.service_count(); ++k) {
    current.hosts[k].assign(inst.services[k].chain_length(), -1);
  }
  std::map<NodeId, double> load;

  // Evaluates the routing of one complete placement: iterate the weighted
  // routing LP exactly as the refinement stage would, but score every
  // iterate by brute-force minimum-max-delay decompositions and keep the
  // best deadline-feasible total.
  auto evaluate_routing = [&](const Placement& placement)
      -> std::optional<std::map<int, double>> {
    LpModel fixed = fix_placement(built.model, built.index, inst, placement);
    std::vector<double> weights(inst.service_count(), 1.0);
    std::optional<std::map<int, double>> best;
    double best_total = 0.0;
    for (int t = 0; t < params.iter_max; ++t) {
      LpModel weighted = set_routing_weights(fixed, built.index, weights);
      LpSolution sol = solve_lp(weighted);
      if (sol.status != LpStatus::Optimal) return std::nullopt;

      std::map<int, double> exact_delay;   // per service, brute-force
      std::map<int, double> peeled_delay;  // per service, the pipeline's heuristic
      bool rejected = false;
      for (int k = 0; k < inst.service_count() && !rejected; ++k) {
        const ServiceRequest& svc = inst.services[k];
        double nfv = 0.0;
        for (int s = 1; s <= svc.chain_length(); ++s) {
          nfv += svc.stages[s - 1].delay_at(placement.hosts[k][s - 1]).value();
        }
        double comm_exact = 0.0, comm_peel = 0.0;
        for (int s = 0; s <= svc.chain_length(); ++s) {
          auto [from, to] = segment_endpoints(inst, placement, k, s);
          auto flows = segment_flows(built.index, sol.values, k, s);
          if (from == to) continue;
          auto mm = min_max_delay_decomposition(inst.network, flows, from, to,
                                                limits.max_support_paths);
          if (!mm.has_value()) {
            rejected = true;
            limit_hit = true;
            break;
          }
          comm_exact += mm->max_delay;
          comm_peel += decompose_flow(inst.network, flows, from, to).max_path_delay;
        }
        exact_delay[k] = nfv + comm_exact;
        peeled_delay[k] = nfv + comm_peel;
      }
      if (rejected) return std::nullopt;

      bool exact_ok = true, peel_ok = true;
      std::vector<int> violators;
      for (int k = 0; k < inst.service_count(); ++k) {
        if (exact_delay[k] > inst.services[k].deadline + 1e-9) exact_ok = false;
        if (peeled_delay[k] > inst.services[k].deadline + 1e-9) {
          peel_ok = false;
          violators.push_back(k);
        }
      }
      if (exact_ok) {
        double total = 0.0;
        for (const auto& [k, d] : exact_delay) total += d;
        if (!best.has_value() || total < best_total - 1e-12) {
          best = exact_delay;
          best_total = total;
        }
      }
      if (peel_ok) break;  // the heuristic pipeline would stop here
      for (int k : violators) {
        weights[k] = std::min(weights[k] * params.rho, params.weight_cap);
      }
    }
    return best;
  };

  std::function<void(size_t)> recurse = [&](size_t depth) {
    if (depth == slots.size()) {
      ++result.enumerated;
      auto delays = evaluate_routing(current);
      if (!delays.has_value()) return;
      double total = 0.0;
      for (const auto& [k, d] : *delays) total += d;
      int activated = current.activated_count();
      double objective = activated + inst.sigma * total;
      if (result.status != OracleStatus::Optimal || objective < result.objective - 1e-12) {
        result.status = OracleStatus::Optimal;
        result.objective = objective;
        result.activated_nodes = activated;
        result.total_delay = total;
        result.placement = current;
        result.service_delays = *delays;
      }
      return;
    }
    const Slot& slot = slots[depth];
    for (NodeId v : slot.candidates) {
      if (load[v] + slot.rate > mu[v] + 1e-9) continue;  // capacity prune
      load[v] += slot.rate;
      current.hosts[slot.k][slot.s - 1] = v;
      recurse(depth + 1);
      load[v] -= slot.rate;
      current.hosts[slot.k][slot.s - 1] = -1;
    }
  };
  recurse(0);

  // A skipped decomposition makes any verdict unreliable; refuse outright
  // rather than report a possibly non-optimal optimum.
  if (limit_hit) {
    result.status = OracleStatus::LimitExceeded;
    result.detail = "a segment support exceeded max_support_paths";
    result.placement.reset();
    return result;
  }
  if (result.status != OracleStatus::Optimal) {
    result.status = OracleStatus::Infeasible;
    result.detail = "no placement admits a deadline-feasible routing";
  }
  return result;
}

}  // namespace slicerlp
