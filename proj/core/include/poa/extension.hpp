#pragma once

#include <vector>

#include <Eigen/Dense>

#include "poa/mmspace.hpp"
#include "poa/poa_solver.hpp"

namespace poa {

// Observable known on a finite sample; queries supply their own distance
// vectors to the sample points, so this stays agnostic to where new points
// come from.
struct SampledObservable {
  Eigen::VectorXd values;

  int size() const { return static_cast<int>(values.size()); }
};

enum class ExtensionMode { upper, lower, balanced };

/// McShane-Whitney extension at one query point.
/// upper: min_i f(x_i) + d(x, x_i); lower: max_i f(x_i) - d(x, x_i);
/// balanced: their average.
double extend(const SampledObservable& phi, const Eigen::VectorXd& query_distances,
              ExtensionMode mode);

struct ExtensionValues {
  double lower, balanced, upper;
};
ExtensionValues extend_all(const SampledObservable& phi, const Eigen::VectorXd& query_distances);

// Deviation report for re-solving POA without some points and extending back
// to them. Informational: POA on a subsample is a different optimization, so
// deviations are reported, not asserted.
struct LeaveOutReport {
  std::vector<int> held_out;
  // per principal observable, max |balanced extension - full-data value|
  // over the held-out points, minimized over the sign ambiguity.
  std::vector<double> max_deviation;
  int subsample_pos = 0;  // observables found on the subsample
  int full_pos = 0;
};

LeaveOutReport leave_out_extension_report(const FiniteMetricSpace& space,
                                          const ProbabilityMeasure& mu,
                                          const std::vector<int>& held_out, int k,
                                          const SolverConfig& cfg);

}  // namespace poa
