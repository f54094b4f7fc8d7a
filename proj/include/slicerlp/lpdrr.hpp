#ifndef SLICERLP_LPDRR_HPP
#define SLICERLP_LPDRR_HPP

#include <optional>
#include <string>
#include <vector>

#include "slicerlp/formulations.hpp"
#include "slicerlp/model.hpp"

namespace slicerlp {

struct AlgoParams {
  double rho = 5.0;         // refinement weight growth factor
  int iter_max = 10;        // refinement iteration cap
  double integrality_tol = 1e-6;
  double weight_cap = 1e12; // keeps rho^t from overflowing on long runs
};

// Which relaxation drives the rounding loop. Refinement always runs on the
// compact relaxation.
enum class Relaxation { Compact, Natural };
// Dynamic re-adopts the modified LP's solution after every feasible pin;
// Static keeps rounding against the initial fractional solution.
enum class RoundingMode { Dynamic, Static };

// One pinned placement variable.
struct Pin {
  int var_id;
  double value;  // 0 or 1
};

// Rounding loop bookkeeping: the pin set A, the fractional reference
// solution, and the LP-solve counter (bounded by |V| * sum_k l_k).
struct RoundingState {
  std::vector<Pin> pins;
  std::vector<double> reference;  // current x* over all model variables
  int loop_lp_solves = 0;
  std::vector<std::string> trace;
};

struct RoundingOutcome {
  std::optional<Placement> placement;
  std::string failure;     // set when placement is absent
  bool relaxation_integral = false;  // no rounding iterations were needed
  double relaxation_objective = 0.0;
  int lp_solves = 0;       // initial relaxation solve + loop solves
  int loop_lp_solves = 0;
  std::vector<std::string> trace;
};

// Rounds the relaxation's placement variables to a binary placement: pin
// every value at 1, repeatedly pin the largest strictly-fractional value
// to 1 and re-solve with the pin set; an infeasible pin is flipped to 0
// without re-solving. Fails when the final vector misses a stage or
// breaks a capacity.
RoundingOutcome round_placement(const Instance& inst, RoundingMode mode = RoundingMode::Dynamic,
                                Relaxation relaxation = Relaxation::Compact,
                                const AlgoParams& params = {});

struct RefinementOutcome {
  std::optional<RoutingPlan> plan;
  std::string failure;
  int lp_solves = 0;
  int iterations = 0;
  std::vector<double> final_weights;
  std::vector<std::string> trace;
};

// Iterative weighted-delay refinement: solve the placement-fixed routing
// LP, recompute true (max-path) delays, and boost the weights of deadline
// violators by rho until every service meets its deadline or iter_max is
// reached.
RefinementOutcome refine_routing(const Instance& inst, const Placement& placement,
                                 const AlgoParams& params = {});

enum class SolveStatus { Feasible, PlacementFailed, RoutingFailed };

std::string to_string(SolveStatus s);

struct SolveReport {
  SolveStatus status = SolveStatus::PlacementFailed;
  std::string detail;
  int activated_nodes = 0;
  double total_delay = 0.0;  // sum over services of NFV + recomputed link delay
  double objective = 0.0;    // activated_nodes + sigma * total_delay
  int lp_solves = 0;         // every LP the run solved, initial relaxation included
  int rounding_lp_solves = 0;
  int refinement_lp_solves = 0;
  double wall_ms = 0.0;
  bool relaxation_integral = false;
  double relaxation_objective = 0.0;
  std::optional<Placement> placement;
  std::optional<RoutingPlan> routing;
};

// Two-stage pipeline: rounding then refinement. `mode`/`relaxation` select
// the baseline variants; the default pair is the main algorithm.
SolveReport solve_with(const Instance& inst, const AlgoParams& params, RoundingMode mode,
                       Relaxation relaxation);
SolveReport solve(const Instance& inst, const AlgoParams& params = {});

// Loop-solve budget of the two stages combined (the initial relaxation
// solve of the rounding stage is a constant on top of it).
int lp_solve_budget(const Instance& inst, const AlgoParams& params);

}  // namespace slicerlp

#endif  // SLICERLP_LPDRR_HPP
