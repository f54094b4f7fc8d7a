#include "slicerlp/lp_model.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace slicerlp {

std::vector<std::string> LpModel::validate() const {
  std::vector<std::string> problems;
  for (int j = 0; j < num_variables(); ++j) {
    const auto& v = variables[j];
    if (!(v.lower <= v.upper)) {
      problems.push_back("variable " + std::to_string(j) + ": lower > upper");
    }
    if (std::isnan(v.lower) || std::isnan(v.upper) || std::isnan(v.objective)) {
      problems.push_back("variable " + std::to_string(j) + ": NaN data");
    }
  }
  for (int i = 0; i < num_constraints(); ++i) {
    const auto& c = constraints[i];
    if (!std::isfinite(c.rhs)) {
      problems.push_back("constraint " + std::to_string(i) + ": non-finite rhs");
    }
    for (auto [j, a] : c.coeffs) {
      if (j < 0 || j >= num_variables()) {
        problems.push_back("constraint " + std::to_string(i) +
                           ": references unknown variable " + std::to_string(j));
      }
      if (!std::isfinite(a)) {
        problems.push_back("constraint " + std::to_string(i) + ": non-finite coefficient");
      }
    }
  }
  return problems;
}

double LpModel::objective_value(const std::vector<double>& x) const {
  double obj = 0.0;
  for (int j = 0; j < num_variables(); ++j) obj += variables[j].objective * x[j];
  return obj;
}

std::vector<std::string> LpModel::point_violations(const std::vector<double>& x,
                                                   double tol) const {
  std::vector<std::string> out;
  if (static_cast<int>(x.size()) != num_variables()) {
    out.push_back("point dimension mismatch");
    return out;
  }
  for (int j = 0; j < num_variables(); ++j) {
    if (x[j] < variables[j].lower - tol) {
      out.push_back("variable " + std::to_string(j) + " below lower bound");
    }
    if (x[j] > variables[j].upper + tol) {
      out.push_back("variable " + std::to_string(j) + " above upper bound");
    }
  }
  for (int i = 0; i < num_constraints(); ++i) {
    const auto& c = constraints[i];
    double lhs = 0.0;
    for (auto [j, a] : c.coeffs) lhs += a * x[j];
    bool bad = false;
    switch (c.sense) {
      case RowSense::LessEqual: bad = lhs > c.rhs + tol; break;
      case RowSense::Equal: bad = std::abs(lhs - c.rhs) > tol; break;
      case RowSense::GreaterEqual: bad = lhs < c.rhs - tol; break;
    }
    if (bad) out.push_back("constraint " + std::to_string(i) + " violated");
  }
  return out;
}

LpModel fix_variable(const LpModel& model, int var, double value) {
  if (var < 0 || var >= model.num_variables()) {
    throw std::invalid_argument("fix_variable: unknown variable id");
  }
  const auto& v = model.variables[var];
  if (value < v.lower - 1e-12 || value > v.upper + 1e-12) {
    throw std::invalid_argument("fix_variable: value outside bounds");
  }
  LpModel fixed = model;
  fixed.variables[var].lower = value;
  fixed.variables[var].upper = value;
  return fixed;
}

namespace {

std::string var_name(const std::vector<std::string>& names, int j) {
  if (j < static_cast<int>(names.size()) && !names[j].empty()) return names[j];
  return "x" + std::to_string(j);
}

void append_terms(std::ostringstream& os, const std::vector<std::pair<int, double>>& terms,
                  const std::vector<std::string>& names) {
  bool first = true;
  for (auto [j, a] : terms) {
    if (a == 0.0) continue;
    if (first) {
      os << (a < 0 ? "- " : "");
      first = false;
    } else {
      os << (a < 0 ? " - " : " + ");
    }
    os << std::abs(a) << " " << var_name(names, j);
  }
  if (first) os << "0 " << var_name(names, 0);
}

}  // namespace

std::string export_lp_format(const LpModel& model, const std::vector<std::string>& names) {
  std::ostringstream os;
  os.precision(17);
  os << "Minimize\n obj: ";
  std::vector<std::pair<int, double>> obj;
  for (int j = 0; j < model.num_variables(); ++j) {
    if (model.variables[j].objective != 0.0) obj.push_back({j, model.variables[j].objective});
  }
  append_terms(os, obj, names);
  os << "\nSubject To\n";
  for (int i = 0; i < model.num_constraints(); ++i) {
    const auto& c = model.constraints[i];
    os << " c" << i << ": ";
    append_terms(os, c.coeffs, names);
    switch (c.sense) {
      case RowSense::LessEqual: os << " <= "; break;
      case RowSense::Equal: os << " = "; break;
      case RowSense::GreaterEqual: os << " >= "; break;
    }
    os << c.rhs << "\n";
  }
  os << "Bounds\n";
  for (int j = 0; j < model.num_variables(); ++j) {
    const auto& v = model.variables[j];
    os << " ";
    if (std::isinf(v.lower)) {
      os << "-inf";
    } else {
      os << v.lower;
    }
    os << " <= " << var_name(names, j) << " <= ";
    if (std::isinf(v.upper)) {
      os << "+inf";
    } else {
      os << v.upper;
    }
    os << "\n";
  }
  os << "End\n";
  return os.str();
}

}  // namespace slicerlp
