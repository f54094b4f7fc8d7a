#ifndef SLICERLP_LP_MODEL_HPP
#define SLICERLP_LP_MODEL_HPP

#include <limits>
#include <string>
#include <vector>

namespace slicerlp {

constexpr double kLpInfinity = std::numeric_limits<double>::infinity();

enum class RowSense { LessEqual, Equal, GreaterEqual };

struct LpVariable {
  double lower = 0.0;
  double upper = kLpInfinity;
  double objective = 0.0;
};

struct LpConstraint {
  std::vector<std::pair<int, double>> coeffs;  // (variable id, coefficient)
  RowSense sense = RowSense::LessEqual;
  double rhs = 0.0;
};

// Sparse LP in minimization form. Variables and constraints are identified
// by their insertion index.
struct LpModel {
  std::vector<LpVariable> variables;
  std::vector<LpConstraint> constraints;

  int add_variable(double lower, double upper, double objective) {
    variables.push_back({lower, upper, objective});
    return static_cast<int>(variables.size()) - 1;
  }
  int add_constraint(std::vector<std::pair<int, double>> coeffs, RowSense sense,
                     double rhs) {
    constraints.push_back({std::move(coeffs), sense, rhs});
    return static_cast<int>(constraints.size()) - 1;
  }
  int num_variables() const { return static_cast<int>(variables.size()); }
  int num_constraints() const { return static_cast<int>(constraints.size()); }

  // Structural sanity: bound ordering, coefficient references, finite rhs.
  std::vector<std::string> validate() const;

  // Objective value of an arbitrary point.
  double objective_value(const std::vector<double>& x) const;
  // Constraint/bound violations of a point, each described textually.
  std::vector<std::string> point_violations(const std::vector<double>& x,
                                            double tol = 1e-7) const;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  std::vector<double> values;  // indexed by variable id; empty unless Optimal
  double objective = 0.0;
  int iterations = 0;
};

// Returns a copy with the variable's bounds collapsed to [value, value].
// Throws std::invalid_argument when value lies outside the current bounds.
LpModel fix_variable(const LpModel& model, int var, double value);

// Fixed-format LP file text (developer tooling, for cross-checks against
// external solvers). `names` may be empty, in which case x0,x1,... is used.
std::string export_lp_format(const LpModel& model,
                             const std::vector<std::string>& names = {});

}  // namespace slicerlp

#endif  // SLICERLP_LP_MODEL_HPP
