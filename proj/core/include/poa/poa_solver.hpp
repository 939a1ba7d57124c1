#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "poa/mmspace.hpp"
#include "poa/observables.hpp"

namespace poa {

enum class ConstraintMode { pairwise, edges };

// Feasible set of the per-stage maximization: |f_i - f_j| <= bound for the
// listed pairs, intersected with the centering hyperplane and one
// mu-orthogonality hyperplane per prior observable (all with rhs 0).
struct LipschitzPolytope {
  struct PairBound {
    int i, j;
    double bound;
  };

  int n = 0;
  std::vector<PairBound> pairs;
  std::vector<Eigen::VectorXd> equality_rows;  // centering row first

  int inequality_pair_count() const { return static_cast<int>(pairs.size()); }
  int equality_count() const { return static_cast<int>(equality_rows.size()); }

  /// Largest violation of any pair constraint at f (negative when interior).
  double max_pair_violation(const Eigen::VectorXd& f) const;
  /// Largest absolute residual of the equality rows at f.
  double max_equality_residual(const Eigen::VectorXd& f) const;
};

/// Assembles the stage polytope. Edges mode needs the graph whose shortest
/// paths produced the metric; priors must be centered and certified.
LipschitzPolytope build_polytope(const FiniteMetricSpace& space, const ProbabilityMeasure& mu,
                                 const std::vector<Observable>& priors, ConstraintMode mode,
                                 const WeightedGraph* graph = nullptr);

/// Exact LP maximization of <c, f> over the polytope. Solved through the
/// dual so the row-heavy pairwise polytopes stay cheap; any optimal point is
/// acceptable. c = 0 returns the zero vector.
Eigen::VectorXd lp_maximize(const Eigen::VectorXd& c, const LipschitzPolytope& polytope);

struct SolverConfig {
  int restarts = 16;
  int max_ccp_iters = 100;
  double rel_improvement_tol = 1e-7;
  double variance_floor = 1e-10;
  std::uint64_t seed = 0;
  ConstraintMode constraint_mode = ConstraintMode::pairwise;

  void validate() const;
};

struct SolveDiagnostics {
  int iterations = 0;     // CCP iterations of the winning restart
  int restarts_used = 0;  // starts actually executed
  int best_restart = 0;   // index of the winning start
};

struct PrincipalObservable {
  Observable phi;
  double variance = 0.0;
  SolveDiagnostics diagnostics;
};

// Ordered principal observables with nonincreasing variances. `truncated`
// is set when the requested count ran into a degenerate (zero-variance)
// feasible set.
struct PrincipalObservableSet {
  std::vector<Observable> observables;
  std::vector<double> variances;
  std::vector<SolveDiagnostics> diagnostics;
  bool truncated = false;

  int count() const { return static_cast<int>(observables.size()); }
};

/// One stage of the variance maximization: convex-concave iterations over
/// the polytope from several starts, best run wins. Throws
/// DegenerateVariance when no direction of nontrivial variance remains.
PrincipalObservable solve_principal_observable(const FiniteMetricSpace& space,
                                               const ProbabilityMeasure& mu,
                                               const std::vector<Observable>& priors,
                                               const SolverConfig& cfg,
                                               const WeightedGraph* graph = nullptr);

/// Runs up to k stages, truncating early on degeneracy.
PrincipalObservableSet solve_poa(const FiniteMetricSpace& space, const ProbabilityMeasure& mu,
                                 int k, const SolverConfig& cfg,
                                 const WeightedGraph* graph = nullptr);

// Test oracle: exact maximization by enumerating polytope vertices (active
// sets of pair constraints solved with either sign). Pairwise mode, n <= 6.
struct BruteForceResult {
  Observable phi;
  double variance = 0.0;
};
BruteForceResult brute_force_po(const FiniteMetricSpace& space, const ProbabilityMeasure& mu,
                                const std::vector<Observable>& priors);

/// Flips f so the coordinate of largest absolute value is positive, ties
/// broken by making the lowest such index positive.
void sign_normalize(Eigen::VectorXd& f);

}  // namespace poa
