#include "slicerlp/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

namespace slicerlp {

namespace {

enum class VarState : unsigned char { Basic, AtLower, AtUpper, FreeNonbasic };

// Product-form update. After replacing basis column r by the entering
// column with FTRAN image alpha, the new inverse applies the stored
// (r, alpha) transform on top of the old one.
struct Eta {
  int r = 0;
  double alpha_r = 1.0;
  std::vector<std::pair<int, double>> alpha_others;
};

class Simplex {
 public:
  Simplex(const LpModel& model, const SimplexOptions& opts)
      : model_(model), opts_(opts), m_(model.num_constraints()),
        n_struct_(model.num_variables()), n_(n_struct_ + m_) {
    build_columns();
  }

  LpSolution run() {
    init_basis();
    factorize_and_recompute();

    phase_one_ = infeasibility_count() > 0;
    if (phase_one_) {
      iterate(/*phase_one=*/true);
      if (infeasibility_count() > 0) {
        LpSolution sol;
        sol.status = LpStatus::Infeasible;
        sol.iterations = static_cast<int>(total_iters_);
        return sol;
      }
    }
    phase_one_ = false;
    bool bounded = iterate(/*phase_one=*/false);

    LpSolution sol;
    sol.iterations = static_cast<int>(total_iters_);
    if (!bounded) {
      sol.status = LpStatus::Unbounded;
      return sol;
    }
    // Fresh factorization before reporting; kills accumulated drift.
    factorize_and_recompute();
    sol.status = LpStatus::Optimal;
    sol.values.assign(x_.begin(), x_.begin() + n_struct_);
    sol.objective = 0.0;
    for (int j = 0; j < n_struct_; ++j) sol.objective += cost_[j] * x_[j];
    return sol;
  }

 private:
  const LpModel& model_;
  SimplexOptions opts_;
  int m_, n_struct_, n_;

  // Column-wise matrix [A | I] including slack columns, flat CSC layout.
  std::vector<int> col_start_;  // n_+1 entries
  std::vector<int> col_row_;
  std::vector<double> col_val_;
  std::vector<double> lower_, upper_, cost_;
  std::vector<double> rhs_;
  int pricing_cursor_ = 0;

  std::vector<int> basis_;          // basis_[i] = variable in basis row i
  std::vector<int> basic_pos_;      // variable -> basis row, or -1
  std::vector<VarState> state_;
  std::vector<double> x_;           // current values of all variables

  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu_;
  std::vector<Eta> etas_;
  long total_iters_ = 0;
  bool phase_one_ = false;

  void build_columns() {
    lower_.assign(n_, 0.0);
    upper_.assign(n_, kLpInfinity);
    cost_.assign(n_, 0.0);
    rhs_.assign(m_, 0.0);

    std::vector<std::vector<std::pair<int, double>>> cols(n_);
    for (int j = 0; j < n_struct_; ++j) {
      lower_[j] = model_.variables[j].lower;
      upper_[j] = model_.variables[j].upper;
      cost_[j] = model_.variables[j].objective;
    }
    for (int i = 0; i < m_; ++i) {
      const auto& row = model_.constraints[i];
      rhs_[i] = row.rhs;
      for (auto [j, a] : row.coeffs) {
        if (a == 0.0) continue;
        // Merge duplicates so each column holds one entry per row.
        auto& col = cols[j];
        bool merged = false;
        for (auto& [ri, rv] : col) {
          if (ri == i) {
            rv += a;
            merged = true;
            break;
          }
        }
        if (!merged) col.push_back({i, a});
      }
      int slack = n_struct_ + i;
      cols[slack].push_back({i, 1.0});
      switch (row.sense) {
        case RowSense::LessEqual:
          lower_[slack] = 0.0;
          upper_[slack] = kLpInfinity;
          break;
        case RowSense::GreaterEqual:
          lower_[slack] = -kLpInfinity;
          upper_[slack] = 0.0;
          break;
        case RowSense::Equal:
          lower_[slack] = 0.0;
          upper_[slack] = 0.0;
          break;
      }
    }

    col_start_.assign(n_ + 1, 0);
    for (int j = 0; j < n_; ++j) col_start_[j + 1] = col_start_[j] + static_cast<int>(cols[j].size());
    col_row_.resize(col_start_[n_]);
    col_val_.resize(col_start_[n_]);
    for (int j = 0; j < n_; ++j) {
      int at = col_start_[j];
      for (auto [i, a] : cols[j]) {
        col_row_[at] = i;
        col_val_[at] = a;
        ++at;
      }
    }
  }

  void init_basis() {
    basis_.resize(m_);
    basic_pos_.assign(n_, -1);
    state_.assign(n_, VarState::AtLower);
    x_.assign(n_, 0.0);

    for (int j = 0; j < n_; ++j) {
      if (std::isfinite(lower_[j])) {
        state_[j] = VarState::AtLower;
        x_[j] = lower_[j];
      } else if (std::isfinite(upper_[j])) {
        state_[j] = VarState::AtUpper;
        x_[j] = upper_[j];
      } else {
        state_[j] = VarState::FreeNonbasic;
        x_[j] = 0.0;
      }
    }
    for (int i = 0; i < m_; ++i) {
      int slack = n_struct_ + i;
      basis_[i] = slack;
      basic_pos_[slack] = i;
      state_[slack] = VarState::Basic;
    }
  }

  void factorize_and_recompute() {
    factorize();
    recompute_basics();
  }

  void factorize() {
    if (m_ == 0) return;
    std::vector<Eigen::Triplet<double>> trips;
    for (int i = 0; i < m_; ++i) {
      int j = basis_[i];
      for (int at = col_start_[j]; at < col_start_[j + 1]; ++at) {
        trips.emplace_back(col_row_[at], i, col_val_[at]);
      }
    }
    Eigen::SparseMatrix<double> B(m_, m_);
    B.setFromTriplets(trips.begin(), trips.end());
    lu_.compute(B);
    if (lu_.info() != Eigen::Success) {
      throw SimplexNumericalError("basis factorization failed");
    }
    etas_.clear();
  }

  void recompute_basics() {
    if (m_ == 0) return;
    Eigen::VectorXd rhs(m_);
    for (int i = 0; i < m_; ++i) rhs[i] = rhs_[i];
    for (int j = 0; j < n_; ++j) {
      if (state_[j] == VarState::Basic || x_[j] == 0.0) continue;
      for (int at = col_start_[j]; at < col_start_[j + 1]; ++at) {
        rhs[col_row_[at]] -= col_val_[at] * x_[j];
      }
    }
    Eigen::VectorXd xb = lu_.solve(rhs);
    for (int i = 0; i < m_; ++i) x_[basis_[i]] = xb[i];
  }

  // v <- B^{-1} v
  void ftran(Eigen::VectorXd& v) {
    if (m_ == 0) return;
    v = lu_.solve(v).eval();
    for (const Eta& e : etas_) {
      double t = v[e.r];
      if (t == 0.0) continue;
      t /= e.alpha_r;
      v[e.r] = t;
      for (auto [i, a] : e.alpha_others) v[i] -= a * t;
    }
  }

  // v <- B^{-T} v
  void btran(Eigen::VectorXd& v) {
    if (m_ == 0) return;
    for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
      double dot = 0.0;
      for (auto [i, a] : it->alpha_others) dot += a * v[i];
      v[it->r] = (v[it->r] - dot) / it->alpha_r;
    }
    v = lu_.transpose().solve(v).eval();
  }

  int infeasibility_count() const {
    int count = 0;
    for (int i = 0; i < m_; ++i) {
      int j = basis_[i];
      if (x_[j] < lower_[j] - opts_.feas_tol || x_[j] > upper_[j] + opts_.feas_tol) ++count;
    }
    return count;
  }

  // Phase-one costs: -1 below lower, +1 above upper, else the true cost.
  double effective_cost(int j) const {
    if (!phase_one_) return cost_[j];
    if (state_[j] == VarState::Basic) {
      if (x_[j] < lower_[j] - opts_.feas_tol) return -1.0;
      if (x_[j] > upper_[j] + opts_.feas_tol) return 1.0;
    }
    return 0.0;
  }

  // Main loop for one phase. Returns false only on unboundedness (phase 2).
  bool iterate(bool phase_one) {
    phase_one_ = phase_one;
    long phase_iters = 0;
    const long bland_after = opts_.bland_from_start ? 0 : 3L * (m_ + n_);
    const long iter_limit = opts_.max_iterations > 0
                                ? opts_.max_iterations
                                : 200L * (m_ + n_) + 20000;
    int since_refactor = 0;

    while (true) {
      if (phase_one && infeasibility_count() == 0) return true;

      Eigen::VectorXd y(m_);
      for (int i = 0; i < m_; ++i) y[i] = effective_cost(basis_[i]);
      btran(y);

      const bool bland = phase_iters >= bland_after;
      int entering = -1, dir = 0;
      double best_score = opts_.dual_tol;
      for (int j = 0; j < n_; ++j) {
        if (state_[j] == VarState::Basic) continue;
        if (lower_[j] == upper_[j]) continue;  // fixed, cannot move
        double d = effective_cost(j);
        for (auto [r, a] : cols_[j]) d -= y[r] * a;
        int cand_dir = 0;
        if (state_[j] == VarState::AtLower && d < -opts_.dual_tol) cand_dir = 1;
        else if (state_[j] == VarState::AtUpper && d > opts_.dual_tol) cand_dir = -1;
        else if (state_[j] == VarState::FreeNonbasic && std::abs(d) > opts_.dual_tol)
          cand_dir = d < 0 ? 1 : -1;
        if (cand_dir == 0) continue;
        if (bland) {
          entering = j;
          dir = cand_dir;
          break;
        }
        if (std::abs(d) > best_score) {
          best_score = std::abs(d);
          entering = j;
          dir = cand_dir;
        }
      }

      if (entering < 0) {
        if (phase_one) return true;  // phase-1 optimal; caller checks residual
        return true;                 // phase-2 optimal
      }

      Eigen::VectorXd alpha = Eigen::VectorXd::Zero(m_);
      for (auto [r, a] : cols_[entering]) alpha[r] = a;
      ftran(alpha);

      // Ratio test: step t >= 0 along x_entering, basics move by -dir*alpha.
      // Infeasible basics (phase 1 only) block at the bound they violate.
      struct Blocker {
        int pos;
        double t;
        double bound;
      };
      std::vector<Blocker> blockers;
      for (int i = 0; i < m_; ++i) {
        double a = alpha[i];
        if (std::abs(a) < opts_.pivot_tol) continue;
        int bj = basis_[i];
        double g = -dir * a;  // d x_B[i] / dt
        double t = kLpInfinity, bound = 0.0;
        if (phase_one && x_[bj] < lower_[bj] - opts_.feas_tol) {
          if (g > 0) { t = (lower_[bj] - x_[bj]) / g; bound = lower_[bj]; }
        } else if (phase_one && x_[bj] > upper_[bj] + opts_.feas_tol) {
          if (g < 0) { t = (upper_[bj] - x_[bj]) / g; bound = upper_[bj]; }
        } else if (g > 0 && std::isfinite(upper_[bj])) {
          t = (upper_[bj] - x_[bj]) / g;
          bound = upper_[bj];
        } else if (g < 0 && std::isfinite(lower_[bj])) {
          t = (lower_[bj] - x_[bj]) / g;
          bound = lower_[bj];
        }
        if (std::isfinite(t)) blockers.push_back({i, std::max(t, 0.0), bound});
      }

      double own_range = upper_[entering] - lower_[entering];
      double t_min = std::isfinite(own_range) ? own_range : kLpInfinity;
      for (const auto& b : blockers) t_min = std::min(t_min, b.t);

      if (!std::isfinite(t_min)) {
        if (phase_one) throw SimplexNumericalError("phase-1 ray; tolerances defeated");
        return false;  // unbounded
      }

      // Among blockers within a hair of the tightest step pick the leaving
      // row: largest pivot for stability, smallest variable index under
      // Bland's rule.
      int leave_pos = -1;
      double leave_bound = 0.0, t_best = t_min, best_piv = 0.0;
      for (const auto& b : blockers) {
        if (b.t > t_min + 1e-9) continue;
        if (bland) {
          if (leave_pos < 0 || basis_[b.pos] < basis_[leave_pos]) {
            leave_pos = b.pos;
            leave_bound = b.bound;
            t_best = b.t;
          }
        } else if (std::abs(alpha[b.pos]) > best_piv) {
          best_piv = std::abs(alpha[b.pos]);
          leave_pos = b.pos;
          leave_bound = b.bound;
          t_best = b.t;
        }
      }

      if (leave_pos < 0) {
        // No blocker within reach: entering variable jumps to its other
        // bound (own_range is finite here, else t_min above were infinite).
        t_best = own_range;
        for (int i = 0; i < m_; ++i) {
          if (std::abs(alpha[i]) > 1e-12) x_[basis_[i]] -= dir * t_best * alpha[i];
        }
        if (dir > 0) {
          x_[entering] = upper_[entering];
          state_[entering] = VarState::AtUpper;
        } else {
          x_[entering] = lower_[entering];
          state_[entering] = VarState::AtLower;
        }
      } else {
        double piv = alpha[leave_pos];
        if (std::abs(piv) < opts_.pivot_tol) {
          throw SimplexNumericalError("pivot below tolerance");
        }
        int leaving = basis_[leave_pos];
        for (int i = 0; i < m_; ++i) {
          if (std::abs(alpha[i]) > 1e-12) x_[basis_[i]] -= dir * t_best * alpha[i];
        }
        x_[entering] = (state_[entering] == VarState::AtLower   ? lower_[entering]
                        : state_[entering] == VarState::AtUpper ? upper_[entering]
                                                                : 0.0) +
                       dir * t_best;
        x_[leaving] = leave_bound;  // snap to the blocking bound
        state_[leaving] = (leave_bound == lower_[leaving] && std::isfinite(lower_[leaving]))
                              ? VarState::AtLower
                              : VarState::AtUpper;
        state_[entering] = VarState::Basic;
        basis_[leave_pos] = entering;
        basic_pos_[entering] = leave_pos;
        basic_pos_[leaving] = -1;

        Eta eta;
        eta.r = leave_pos;
        eta.alpha_r = piv;
        // LU solves leave dense numerical dust; only real entries matter.
        for (int i = 0; i < m_; ++i) {
          if (i != leave_pos && std::abs(alpha[i]) > 1e-12) {
            eta.alpha_others.push_back({i, alpha[i]});
          }
        }
        etas_.push_back(std::move(eta));

        if (++since_refactor >= opts_.refactor_interval) {
          factorize_and_recompute();
          since_refactor = 0;
        }
      }

      ++phase_iters;
      ++total_iters_;
      if (phase_iters > iter_limit) {
        throw SimplexNumericalError("iteration limit exceeded");
      }
    }
  }
};

}  // namespace

LpSolution solve_lp(const LpModel& model, const SimplexOptions& opts) {
  {
    auto problems = model.validate();
    if (!problems.empty()) {
      throw std::invalid_argument("solve_lp: invalid model: " + problems.front());
    }
  }

  auto attempt = [&](const SimplexOptions& o) {
    Simplex s(model, o);
    LpSolution sol = s.run();
    if (sol.status == LpStatus::Optimal) {
      auto bad = model.point_violations(sol.values, 10 * o.feas_tol);
      if (!bad.empty()) {
        throw SimplexNumericalError("optimal point failed verification: " + bad.front());
      }
    }
    return sol;
  };

  try {
    return attempt(opts);
  } catch (const SimplexNumericalError&) {
    // One deterministic retry on the slow-but-safe path.
    SimplexOptions retry = opts;
    retry.bland_from_start = true;
    retry.refactor_interval = 16;
    return attempt(retry);
  }
}

}  // namespace slicerlp
