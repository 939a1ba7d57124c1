#pragma once

#include <Eigen/Dense>

#include "poa/mmspace.hpp"

namespace poa {

// Scalar field on the points of a space. `certified` records a successful
// 1-Lipschitz check (check_lipschitz / certify).
struct Observable {
  Eigen::VectorXd values;
  bool certified = false;

  Observable() = default;
  explicit Observable(Eigen::VectorXd v, bool cert = false)
      : values(std::move(v)), certified(cert) {}

  int size() const { return static_cast<int>(values.size()); }
  double operator[](int i) const { return values(i); }
};

struct CertReport {
  double max_violation;  // max over checked pairs of |f_i - f_j| - K d_ij
  int worst_i = -1, worst_j = -1;
  bool certified = false;
};

enum class LipschitzCheckMode { pairwise, edges };

// Tolerance for accepting a Lipschitz certificate; LP vertices carry solver
// slack of this order.
inline constexpr double kLipschitzTol = 1e-8;
// |mean| above this disqualifies an input that must be centered.
inline constexpr double kCenteredTol = 1e-9;

double mean(const ProbabilityMeasure& mu, const Observable& f);
Observable center(const ProbabilityMeasure& mu, const Observable& f);

/// Covariance of two centered observables; throws NotCentered otherwise.
double covariance(const ProbabilityMeasure& mu, const Observable& f, const Observable& g);

double variance(const ProbabilityMeasure& mu, const Observable& f);

/// Centered covariance of arbitrary observables. Note: this is the raw
/// centered second moment, not the Pearson coefficient — no division by
/// standard deviations.
double correlation(const ProbabilityMeasure& mu, const Observable& f, const Observable& g);

/// Checks |f_i - f_j| <= K d_ij. Pairwise mode checks all pairs; edges mode
/// checks only graph edges, which suffices for shortest-path metrics.
CertReport check_lipschitz(const FiniteMetricSpace& space, const Observable& f, double K,
                           LipschitzCheckMode mode = LipschitzCheckMode::pairwise,
                           const WeightedGraph* graph = nullptr);

/// Runs the K=1 check and stamps the flag on success. Returns the report.
CertReport certify(const FiniteMetricSpace& space, Observable& f,
                   LipschitzCheckMode mode = LipschitzCheckMode::pairwise,
                   const WeightedGraph* graph = nullptr);

}  // namespace poa
