#include "slicerlp/lpdrr.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "slicerlp/flow_decompose.hpp"
#include "slicerlp/simplex.hpp"

namespace slicerlp {

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Feasible: return "Feasible";
    case SolveStatus::PlacementFailed: return "PlacementFailed";
    case SolveStatus::RoutingFailed: return "RoutingFailed";
  }
  return "?";
}

namespace {

LpModel apply_pins(const LpModel& base, const std::vector<Pin>& pins) {
  LpModel out = base;
  for (const Pin& p : pins) {
    out.variables[p.var_id].lower = p.value;
    out.variables[p.var_id].upper = p.value;
  }
  return out;
}

// Reads the rounded placement off the pin set and reference values;
// nullopt (with a message) when some stage is not hosted exactly once.
std::optional<Placement> extract_placement(const Instance& inst, const VarIndex& idx,
                                           const std::vector<double>& reference,
                                           double tol, std::string& why) {
  Placement placement;
  placement.hosts.resize(inst.service_count());
  for (int k = 0; k < inst.service_count(); ++k) {
    placement.hosts[k].assign(inst.services[k].chain_length(), -1);
  }
  for (const auto& [key, id] : idx.entries()) {
    if (key.kind != VarKind::Placement) continue;
    if (reference[id] >= 1.0 - tol) {
      NodeId& slot = placement.hosts[key.k][key.s - 1];
      if (slot != -1) {
        why = "service " + std::to_string(inst.services[key.k].id) + ", stage " +
              std::to_string(key.s) + " hosted twice";
        return std::nullopt;
      }
      slot = key.node;
    }
  }
  for (int k = 0; k < inst.service_count(); ++k) {
    for (int s = 1; s <= inst.services[k].chain_length(); ++s) {
      if (placement.hosts[k][s - 1] == -1) {
        why = "service " + std::to_string(inst.services[k].id) + ", stage " +
              std::to_string(s) + " left unhosted";
        return std::nullopt;
      }
    }
  }
  return placement;
}

}  // namespace

RoundingOutcome round_placement(const Instance& inst, RoundingMode mode,
                                Relaxation relaxation, const AlgoParams& params) {
  RoundingOutcome out;
  BuiltModel built =
      relaxation == Relaxation::Compact ? build_lp2(inst) : build_lp1(inst);
  const double tol = params.integrality_tol;

  LpSolution sol = solve_lp(built.model);
  out.lp_solves = 1;
  if (sol.status != LpStatus::Optimal) {
    out.failure = "relaxation is infeasible";
    return out;
  }
  out.relaxation_objective = sol.objective;

  RoundingState state;
  state.reference = sol.values;

  // Ordered view of the placement variables; the (k, s, node) order breaks
  // argmax ties deterministically.
  std::vector<std::pair<VarKey, int>> xvars;
  for (const auto& [key, id] : built.index.entries()) {
    if (key.kind == VarKind::Placement) xvars.push_back({key, id});
  }
  std::sort(xvars.begin(), xvars.end(), [](const auto& a, const auto& b) {
    return std::tie(a.first.k, a.first.s, a.first.node) <
           std::tie(b.first.k, b.first.s, b.first.node);
  });

  std::vector<char> pinned(built.model.num_variables(), 0);
  auto fractional = [&](int id) {
    return state.reference[id] > tol && state.reference[id] < 1.0 - tol;
  };

  const int pin_budget = static_cast<int>(xvars.size());
  bool any_loop = false;
  while (true) {
    bool has_fractional = false;
    for (const auto& [key, id] : xvars) {
      if (!pinned[id] && fractional(id)) {
        has_fractional = true;
        break;
      }
    }
    if (!has_fractional) break;
    any_loop = true;

    // Pin every solved-to-one variable first.
    for (const auto& [key, id] : xvars) {
      if (!pinned[id] && state.reference[id] >= 1.0 - tol) {
        pinned[id] = 1;
        state.pins.push_back({id, 1.0});
      }
    }

    // Largest strictly-fractional value; ties fall to the smallest
    // (k, s, node) by the iteration order.
    int chosen = -1;
    double best = 0.0;
    const VarKey* chosen_key = nullptr;
    for (const auto& [key, id] : xvars) {
      if (pinned[id] || !fractional(id)) continue;
      if (state.reference[id] > best + 1e-12) {
        best = state.reference[id];
        chosen = id;
        chosen_key = &key;
      }
    }
    if (chosen < 0) break;  // everything fractional got pinned above

    pinned[chosen] = 1;
    state.pins.push_back({chosen, 1.0});
    LpModel modified = apply_pins(built.model, state.pins);
    LpSolution attempt = solve_lp(modified);
    ++state.loop_lp_solves;
    ++out.lp_solves;

    std::string label = built.index.describe(chosen, inst);
    if (attempt.status == LpStatus::Optimal) {
      if (mode == RoundingMode::Dynamic) {
        state.reference = attempt.values;  // the dynamic update
      } else {
        state.reference[chosen] = 1.0;  // keep rounding against the old values
      }
      state.trace.push_back("pin " + label + "=1: feasible");
    } else {
      state.pins.back().value = 0.0;
      state.reference[chosen] = 0.0;
      state.trace.push_back("pin " + label + "=1: infeasible, flipped to 0");
    }

    if (static_cast<int>(state.pins.size()) > pin_budget) {
      throw std::logic_error("rounding pinned more variables than exist");
    }
  }

  if (state.loop_lp_solves > inst.network.cloud.size() * std::max(inst.total_chain_length(), 0) &&
      state.loop_lp_solves > 0) {
    throw std::logic_error("rounding loop exceeded its LP-solve budget");
  }

  out.relaxation_integral = !any_loop;
  out.loop_lp_solves = state.loop_lp_solves;
  out.trace = std::move(state.trace);

  std::string why;
  auto placement = extract_placement(inst, built.index, state.reference, tol, why);
  if (!placement.has_value()) {
    out.failure = why;
    return out;
  }
  auto violations = check_placement(inst, *placement);
  if (!violations.empty()) {
    out.failure = violations.front().entity + ": " + violations.front().rule;
    return out;
  }
  out.placement = std::move(placement);
  return out;
}

RefinementOutcome refine_routing(const Instance& inst, const Placement& placement,
                                 const AlgoParams& params) {
  RefinementOutcome out;
  BuiltModel built = build_lp2(inst);
  LpModel fixed = fix_placement(built.model, built.index, inst, placement);

  std::vector<double> weights(inst.service_count(), 1.0);
  for (int t = 0; t < params.iter_max; ++t) {
    out.iterations = t + 1;
    LpModel weighted = set_routing_weights(fixed, built.index, weights);
    LpSolution sol = solve_lp(weighted);
    ++out.lp_solves;
    if (sol.status != LpStatus::Optimal) {
      out.failure = "placement cannot be routed";
      out.final_weights = weights;
      return out;
    }

    std::map<SegmentKey, std::map<LinkId, double>> flows;
    for (int k = 0; k < inst.service_count(); ++k) {
      for (int s = 0; s <= inst.services[k].chain_length(); ++s) {
        flows[{k, s}] = segment_flows(built.index, sol.values, k, s);
      }
    }
    RoutingPlan plan;
    RecomputedDelays delays = recompute_delays(inst, placement, flows, &plan);

    std::vector<int> violators;
    for (int k = 0; k < inst.service_count(); ++k) {
      if (delays.service_delay.at(k) > inst.services[k].deadline + 1e-9) {
        violators.push_back(k);
      }
    }
    if (violators.empty()) {
      out.plan = std::move(plan);
      out.final_weights = weights;
      return out;
    }
    std::string note = "iteration " + std::to_string(t + 1) + " violated by";
    for (int k : violators) {
      weights[k] = std::min(weights[k] * params.rho, params.weight_cap);
      note += " k" + std::to_string(k);
    }
    out.trace.push_back(note);
  }
  out.failure = "deadline violations remain after iter_max refinements";
  out.final_weights = weights;
  return out;
}

int lp_solve_budget(const Instance& inst, const AlgoParams& params) {
  return static_cast<int>(inst.network.cloud.size()) * inst.total_chain_length() +
         params.iter_max;
}

SolveReport solve_with(const Instance& inst, const AlgoParams& params, RoundingMode mode,
                       Relaxation relaxation) {
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
        throw std::invalid_argument("solve: invalid instance: " + violations.front().entity +
                                    ": " + violations.front().rule);
      }
      report.status = SolveStatus::PlacementFailed;
      report.detail = violations.front().entity + ": stage uncoverable";
      return finish(report);
    }
  }

  RoundingOutcome rounding = round_placement(inst, mode, relaxation, params);
  report.lp_solves = rounding.lp_solves;
  report.rounding_lp_solves = rounding.loop_lp_solves;
  report.relaxation_integral = rounding.relaxation_integral;
  report.relaxation_objective = rounding.relaxation_objective;
  if (!rounding.placement.has_value()) {
    report.status = SolveStatus::PlacementFailed;
    report.detail = rounding.failure;
    return finish(report);
  }
  report.placement = rounding.placement;

  RefinementOutcome refinement = refine_routing(inst, *rounding.placement, params);
  report.lp_solves += refinement.lp_solves;
  report.refinement_lp_solves = refinement.lp_solves;

  // Loop-solve bound: |V| * sum_k l_k pins plus iter_max refinements.
  if (report.rounding_lp_solves + report.refinement_lp_solves >
      lp_solve_budget(inst, params)) {
    throw std::logic_error("LP-solve count exceeded the complexity bound");
  }

  if (!refinement.plan.has_value()) {
    report.status = SolveStatus::RoutingFailed;
    report.detail = refinement.failure;
    return finish(report);
  }

  report.status = SolveStatus::Feasible;
  report.routing = refinement.plan;
  report.activated_nodes = rounding.placement->activated_count();
  report.total_delay = 0.0;
  for (const auto& [k, d] : refinement.plan->service_delay) report.total_delay += d;
  report.objective = report.activated_nodes + inst.sigma * report.total_delay;
  return finish(report);
}

SolveReport solve(const Instance& inst, const AlgoParams& params) {
  return solve_with(inst, params, RoundingMode::Dynamic, Relaxation::Compact);
}

}  // namespace slicerlp
