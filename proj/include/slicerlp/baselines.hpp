#ifndef SLICERLP_BASELINES_HPP
#define SLICERLP_BASELINES_HPP

#include <optional>

#include "slicerlp/lpdrr.hpp"
#include "slicerlp/model.hpp"

namespace slicerlp {

// One-shot LP rounding: solve the compact relaxation once, pin every
// (k,s) to its largest-valued host simultaneously, check the hosting and
// capacity constraints without any repair, then refine the routing.
SolveReport lpr_round(const Instance& inst, const AlgoParams& params = {});

// Static rounding-and-refinement: the rounding loop keeps checking each
// pin against the modified LP but never refreshes the fractional
// reference solution.
SolveReport lpsrr_round(const Instance& inst, const AlgoParams& params = {});

// Rounding driven by the natural (path-based) relaxation; refinement
// stays on the compact one.
SolveReport lprr_lp1(const Instance& inst, const AlgoParams& params = {});

struct OracleLimits {
  long max_placements = 100000;  // refuse larger placement products
  int max_support_paths = 4000;  // refuse larger decomposition supports
};

enum class OracleStatus { Optimal, Infeasible, LimitExceeded };

struct OracleResult {
  OracleStatus status = OracleStatus::Infeasible;
  double objective = 0.0;    // activated nodes + sigma * total delay
  int activated_nodes = 0;
  double total_delay = 0.0;
  std::optional<Placement> placement;
  std::map<int, double> service_delays;
  long enumerated = 0;       // capacity-feasible placements evaluated
  std::string detail;
};

// Desk-scale exact reference: exhaustively enumerates admissible
// placements (within limits), evaluates each with the placement-fixed
// routing LP and brute-force minimum-max-delay decompositions, and keeps
// the cheapest deadline-feasible combination. Refuses explicitly instead
// of approximating when a limit is hit.
OracleResult exact_enumerate(const Instance& inst, const AlgoParams& params = {},
                             const OracleLimits& limits = {});

struct MinMaxDecomposition {
  double max_delay = 0.0;
  int support_paths = 0;  // simple a->b paths found in the flow support
};

// Minimum achievable max-path delay over all decompositions of the given
// flow (circulation slack allowed), by enumerating the support's simple
// paths and binary-searching the delay threshold with small feasibility
// LPs. nullopt when the support holds more than max_paths simple paths.
std::optional<MinMaxDecomposition> min_max_delay_decomposition(
    const Network& net, const std::map<LinkId, double>& flows, NodeId a, NodeId b,
    int max_paths = 4000);

}  // namespace slicerlp

#endif  // SLICERLP_BASELINES_HPP
