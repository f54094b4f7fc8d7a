#ifndef SLICERLP_SIMPLEX_HPP
#define SLICERLP_SIMPLEX_HPP

#include <stdexcept>

#include "slicerlp/lp_model.hpp"

namespace slicerlp {

// Raised when pivot degeneracy or a singular basis defeats the tolerances.
// Never used to mask an Infeasible/Unbounded verdict.
struct SimplexNumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SimplexOptions {
  double feas_tol = 1e-7;   // primal feasibility tolerance
  double dual_tol = 1e-7;   // reduced-cost (optimality) tolerance
  double pivot_tol = 1e-9;  // smallest acceptable pivot magnitude
  int refactor_interval = 64;
  // Dantzig pricing switches to Bland's rule after 3*(rows+cols) iterations
  // within a phase; guarantees termination on degenerate problems.
  bool bland_from_start = false;
  long max_iterations = -1;  // -1: derived from model size
};

// Two-phase bounded-variable revised simplex. Deterministic: identical
// input yields an identical solution. Optimal solutions satisfy all rows
// and bounds within feas_tol.
LpSolution solve_lp(const LpModel& model, const SimplexOptions& opts = {});

}  // namespace slicerlp

#endif  // SLICERLP_SIMPLEX_HPP
