#include "poa/extension.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace poa {

namespace {

ExtensionValues compute(const SampledObservable& phi, const Eigen::VectorXd& query_distances) {
  if (phi.size() == 0) throw EmptySample("extend: sample is empty");
  if (query_distances.size() != phi.size()) {
    throw LengthMismatch("extend: query distance vector does not match sample size");
  }
  double upper = std::numeric_limits<double>::infinity();
  double lower = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < phi.size(); ++i) {
    const double d = query_distances(i);
    if (!(d >= 0.0)) throw Error("extend: query distances must be nonnegative");
    // a query that coincides with a sample point restricts to the sample value
    if (d == 0.0) return {phi.values(i), phi.values(i), phi.values(i)};
    upper = std::min(upper, phi.values(i) + d);
    lower = std::max(lower, phi.values(i) - d);
  }
  return {lower, 0.5 * (lower + upper), upper};
}

}  // namespace

double extend(const SampledObservable& phi, const Eigen::VectorXd& query_distances,
              ExtensionMode mode) {
  const ExtensionValues v = compute(phi, query_distances);
  switch (mode) {
    case ExtensionMode::upper:
      return v.upper;
    case ExtensionMode::lower:
      return v.lower;
    default:
      return v.balanced;
  }
}

ExtensionValues extend_all(const SampledObservable& phi, const Eigen::VectorXd& query_distances) {
  return compute(phi, query_distances);
}

LeaveOutReport leave_out_extension_report(const FiniteMetricSpace& space,
                                          const ProbabilityMeasure& mu,
                                          const std::vector<int>& held_out, int k,
                                          const SolverConfig& cfg) {
  const int n = space.size();
  std::vector<char> out(n, 0);
  for (int idx : held_out) {
    if (idx < 0 || idx >= n) throw Error("leave_out_extension_report: index out of range");
    out[idx] = 1;
  }
  std::vector<int> kept;
  for (int i = 0; i < n; ++i)
    if (!out[i]) kept.push_back(i);
  if (kept.empty()) throw EmptySample("leave_out_extension_report: no points left");

  const FiniteMetricSpace sub = space.restrict(kept);
  Eigen::VectorXd sub_mass(kept.size());
  for (std::size_t a = 0; a < kept.size(); ++a) sub_mass(a) = mu[kept[a]];
  const ProbabilityMeasure sub_mu = normalize_measure(sub_mass);

  // Leave-out solves are pairwise: the held-out vertices are gone, so the
  // original graph no longer matches the subspace.
  SolverConfig sub_cfg = cfg;
  sub_cfg.constraint_mode = ConstraintMode::pairwise;
  const PrincipalObservableSet sub_pos = solve_poa(sub, sub_mu, k, sub_cfg);
  const PrincipalObservableSet full_pos = solve_poa(space, mu, k, cfg);

  LeaveOutReport report;
  report.held_out = held_out;
  report.subsample_pos = sub_pos.count();
  report.full_pos = full_pos.count();

  const int compare = std::min(sub_pos.count(), full_pos.count());
  for (int m = 0; m < compare; ++m) {
    SampledObservable sample{sub_pos.observables[m].values};
    double dev_plus = 0.0, dev_minus = 0.0;
    for (int idx : report.held_out) {
      Eigen::VectorXd q(kept.size());
      for (std::size_t a = 0; a < kept.size(); ++a) q(a) = space.dist(idx, kept[a]);
      const double value = extend(sample, q, ExtensionMode::balanced);
      const double full_value = full_pos.observables[m].values(idx);
      dev_plus = std::max(dev_plus, std::abs(value - full_value));
      dev_minus = std::max(dev_minus, std::abs(value + full_value));
    }
    report.max_deviation.push_back(std::min(dev_plus, dev_minus));
  }
  return report;
}

}  // namespace poa
