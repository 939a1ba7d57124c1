#pragma once

#include <Eigen/Dense>

#include "poa/errors.hpp"

namespace poa {

// Linear program in standard form:  max c.z  subject to  M z = r,  z >= 0.
struct StandardLp {
  Eigen::MatrixXd M;  // m x n
  Eigen::VectorXd r;  // m
  Eigen::VectorXd c;  // n
};

enum class LpStatus { optimal, infeasible, unbounded };

struct StandardLpSolution {
  LpStatus status = LpStatus::optimal;
  Eigen::VectorXd z;                // length n
  double objective = 0.0;
  // Dual values, one per constraint row. Zero for rows dropped as redundant
  // during phase 1, so callers that rely on multipliers must supply systems
  // with independent rows.
  Eigen::VectorXd row_multipliers;
  int pivots = 0;
};

// Two-phase dense tableau simplex. Dantzig pricing with a Bland's-rule
// fallback once the objective stalls, so degenerate problems terminate.
StandardLpSolution simplex_solve(const StandardLp& lp);

}  // namespace poa
