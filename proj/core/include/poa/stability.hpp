#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "poa/mmspace.hpp"
#include "poa/observables.hpp"
#include "poa/poa_solver.hpp"

namespace poa {

// Coupling between two measures on the same space: nonnegative mass matrix
// with row sums mu and column sums nu.
struct TransportPlan {
  Eigen::MatrixXd mass;
  double cost = 0.0;
};

struct WassersteinResult {
  double value = 0.0;
  TransportPlan plan;
};

/// Exact Wasserstein-1 via the transport LP.
WassersteinResult wasserstein1(const FiniteMetricSpace& space, const ProbabilityMeasure& mu,
                               const ProbabilityMeasure& nu);

struct MeanAuditReport {
  double w1 = 0.0;
  double max_gap = 0.0;  // max over the family of |M_mu f - M_nu f|
  double bound = 0.0;    // w1 + tolerance
  int argmax_index = -1;
  int family_size = 0;
  bool pass = false;
};

/// Checks |M_mu f - M_nu f| <= w1 for every certified observable supplied.
MeanAuditReport mean_stability_audit(const FiniteMetricSpace& space, const ProbabilityMeasure& mu,
                                     const ProbabilityMeasure& nu,
                                     const std::vector<Observable>& family);

struct CovarianceAuditReport {
  double w1 = 0.0;
  double epsilon = 0.0;       // C_X * w1 + tolerance, C_X = max(1, 4 D_X)
  double max_sup_gap = 0.0;   // max ||(f_mu,g_mu)-(f_nu,g_nu)||_inf over pairs
  double sup_bound = 0.0;     // w1 + tolerance
  double max_cov_gap = 0.0;   // max |Sigma_mu(f_mu,g_mu) - Sigma_nu(f_nu,g_nu)|
  double cov_bound = 0.0;     // 4 D_X w1 + tolerance
  int pair_count = 0;
  bool pass = false;
};

/// Checks the constructive admissibility certificate for each pair: the
/// mu- and nu-centered versions stay sup-norm close (within w1) and their
/// covariances differ by at most 4 D_X w1.
CovarianceAuditReport covariance_stability_audit(
    const FiniteMetricSpace& space, const ProbabilityMeasure& mu, const ProbabilityMeasure& nu,
    const std::vector<std::pair<Observable, Observable>>& pairs);

/// Hausdorff distance between the graphs of phi (on A) and psi (on B) inside
/// Z x R with the max metric; cross_dist(a,b) = d_Z(a_a, b_b).
double functional_hausdorff(const Eigen::VectorXd& phi, const Eigen::VectorXd& psi,
                            const Eigen::MatrixXd& cross_dist);

// Relation between two index sets, surjective onto both.
struct Correspondence {
  std::vector<std::pair<int, int>> pairs;
};

struct DistortionResult {
  double dis = 0.0;       // max |d(z1,z2) - d'(z1',z2')|
  double fdis = 0.0;      // max |f(z) - f'(z')|
  double gh_score = 0.0;  // 0.5 * max(dis, 2 fdis)
};

DistortionResult correspondence_distortion(const Correspondence& R, const Eigen::MatrixXd& d_left,
                                           const Eigen::MatrixXd& d_right,
                                           const Eigen::VectorXd& f_left,
                                           const Eigen::VectorXd& f_right);

/// Normalized counting measure of m seeded i.i.d. draws from mu.
ProbabilityMeasure empirical_sample(const FiniteMetricSpace& space, const ProbabilityMeasure& mu,
                                    int m, std::uint64_t seed);

/// Default audit family: principal observables (when supplied), all
/// distance-to-point observables, and seeded random vertices of the
/// Lipschitz polytope.
std::vector<Observable> default_audit_family(const FiniteMetricSpace& space,
                                             const ProbabilityMeasure& mu,
                                             const PrincipalObservableSet* pos,
                                             int random_vertices, std::uint64_t seed);

}  // namespace poa
