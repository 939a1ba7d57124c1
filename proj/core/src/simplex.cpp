#include "poa/simplex.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace poa {

namespace {

constexpr double kPivotEps = 1e-10;   // entries smaller than this are "zero"
constexpr double kReducedEps = 1e-9;  // optimality tolerance on reduced costs
constexpr double kFeasEps = 1e-8;     // phase-1 residual regarded as feasible

using RowMajorMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Full tableau: rows 0..m-1 are constraints, row m is the objective row in
// the (z_j - c_j) convention; column layout is [structural | artificial | rhs].
class Tableau {
public:
  Tableau(const StandardLp& lp)
      : m_(static_cast<int>(lp.M.rows())), n_(static_cast<int>(lp.M.cols())) {
    t_.setZero(m_ + 1, n_ + m_ + 1);
    basis_.resize(m_);
    row_alive_.assign(m_, true);
    for (int i = 0; i < m_; ++i) {
      const double sign = lp.r(i) < 0.0 ? -1.0 : 1.0;
      t_.row(i).head(n_) = sign * lp.M.row(i);
      t_(i, n_ + i) = 1.0;  // artificial
      t_(i, n_ + m_) = sign * lp.r(i);
      basis_[i] = n_ + i;
      flipped_.push_back(sign < 0.0);
    }
  }

  int m() const { return m_; }
  int n() const { return n_; }
  double rhs(int i) const { return t_(i, n_ + m_); }
  int basis(int i) const { return basis_[i]; }
  bool row_alive(int i) const { return row_alive_[i]; }

  // Rebuilds the objective row for the cost vector `cost` (length n_ + m_):
  // obj_j = sum_i cost[basis_i] * t(i,j) - cost_j.
  void set_objective(const Eigen::VectorXd& cost) {
    cost_ = cost;
    t_.row(m_).setZero();
    t_.row(m_).head(n_ + m_) = -cost.transpose();
    for (int i = 0; i < m_; ++i) {
      if (!row_alive_[i]) continue;
      const double cb = cost(basis_[i]);
      if (cb != 0.0) t_.row(m_) += cb * t_.row(i);
    }
  }

  double objective_value() const { return t_(m_, n_ + m_); }
  double reduced(int j) const { return t_(m_, j); }

  void pivot(int row, int col) {
    const double p = t_(row, col);
    t_.row(row) /= p;
    for (int i = 0; i <= m_; ++i) {
      if (i == row) continue;
      const double factor = t_(i, col);
      if (factor != 0.0) t_.row(i) -= factor * t_.row(row);
    }
    basis_[row] = col;
  }

  // One simplex iteration on the current objective row. `allow` gates which
  // columns may enter. Returns false when optimal, throws on unboundedness.
  template <typename Allow>
  bool step(const Allow& allow, bool bland) {
    const int ncols = n_ + m_;
    int enter = -1;
    if (!bland) {
      double best = -kReducedEps;
      for (int j = 0; j < ncols; ++j) {
        const double red = t_(m_, j);
        if (red < best && allow(j)) {
          best = red;
          enter = j;
        }
      }
    } else {
      for (int j = 0; j < ncols; ++j) {
        if (t_(m_, j) < -kReducedEps && allow(j)) {
          enter = j;
          break;
        }
      }
    }
    if (enter < 0) return false;

    int leave = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m_; ++i) {
      if (!row_alive_[i]) continue;
      const double a = t_(i, enter);
      if (a > kPivotEps) {
        const double ratio = rhs(i) / a;
        if (ratio < best_ratio - 1e-12 ||
            (ratio < best_ratio + 1e-12 && (leave < 0 || basis_[i] < basis_[leave]))) {
          best_ratio = ratio;
          leave = i;
        }
      }
    }
    if (leave < 0) throw LpUnbounded("simplex: unbounded objective");
    pivot(leave, enter);
    return true;
  }

  // Removes basic artificials after phase 1: pivot them onto a structural
  // column when possible, otherwise drop the (redundant) row.
  void purge_artificials() {
    for (int i = 0; i < m_; ++i) {
      if (!row_alive_[i] || basis_[i] < n_) continue;
      int best_col = -1;
      double best_abs = kPivotEps;
      for (int j = 0; j < n_; ++j) {
        const double a = std::abs(t_(i, j));
        if (a > best_abs) {
          best_abs = a;
          best_col = j;
        }
      }
      if (best_col >= 0) {
        pivot(i, best_col);
      } else {
        row_alive_[i] = false;
        t_.row(i).setZero();
      }
    }
  }

  Eigen::VectorXd extract_solution() const {
    Eigen::VectorXd z = Eigen::VectorXd::Zero(n_);
    for (int i = 0; i < m_; ++i) {
      if (row_alive_[i] && basis_[i] < n_) z(basis_[i]) = rhs(i);
    }
    return z;
  }

  // pi_i = objective-row entry of the i-th artificial column (cost 0 in
  // phase 2), i.e. c_B B^-1 e_i. Sign flips undo the row normalization.
  Eigen::VectorXd extract_multipliers() const {
    Eigen::VectorXd pi = Eigen::VectorXd::Zero(m_);
    for (int i = 0; i < m_; ++i) {
      if (!row_alive_[i]) continue;
      pi(i) = t_(m_, n_ + i) * (flipped_[i] ? -1.0 : 1.0);
    }
    return pi;
  }

private:
  int m_, n_;
  RowMajorMatrix t_;
  std::vector<int> basis_;
  std::vector<bool> row_alive_;
  std::vector<bool> flipped_;
  Eigen::VectorXd cost_;
};

}  // namespace

StandardLpSolution simplex_solve(const StandardLp& lp) {
  const int m = static_cast<int>(lp.M.rows());
  const int n = static_cast<int>(lp.M.cols());
  if (lp.r.size() != m || lp.c.size() != n) {
    throw InternalSolverError("simplex: inconsistent LP dimensions");
  }

  Tableau tab(lp);
  StandardLpSolution sol;

  const long max_pivots = 50000L + 200L * (m + n);
  long stall_limit = 10L * (m + n) + 200;

  auto run = [&](auto allow) {
    long since_improvement = 0;
    double last_obj = tab.objective_value();
    bool bland = false;
    while (tab.step(allow, bland)) {
      ++sol.pivots;
      if (sol.pivots > max_pivots) {
        throw InternalSolverError("simplex: pivot limit exceeded");
      }
      const double obj = tab.objective_value();
      if (obj > last_obj + 1e-12) {
        last_obj = obj;
        since_improvement = 0;
        bland = false;
      } else if (++since_improvement > stall_limit) {
        bland = true;  // anti-cycling
      }
    }
  };

  // Phase 1: drive the artificials to zero.
  Eigen::VectorXd phase1_cost = Eigen::VectorXd::Zero(n + m);
  phase1_cost.tail(m).setConstant(-1.0);
  tab.set_objective(phase1_cost);
  run([](int) { return true; });
  if (tab.objective_value() < -kFeasEps) {
    sol.status = LpStatus::infeasible;
    return sol;
  }
  tab.purge_artificials();

  // Phase 2 on the real objective; artificials may not re-enter.
  Eigen::VectorXd phase2_cost = Eigen::VectorXd::Zero(n + m);
  phase2_cost.head(n) = lp.c;
  tab.set_objective(phase2_cost);
  try {
    run([n](int j) { return j < n; });
  } catch (const LpUnbounded&) {
    sol.status = LpStatus::unbounded;
    return sol;
  }

  sol.status = LpStatus::optimal;
  sol.z = tab.extract_solution();
  sol.objective = lp.c.dot(sol.z);
  sol.row_multipliers = tab.extract_multipliers();
  return sol;
}

}  // namespace poa
