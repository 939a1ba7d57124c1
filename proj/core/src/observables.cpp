#include "poa/observables.hpp"

#include <cmath>
#include <limits>

namespace poa {

namespace {

void require_same_length(const ProbabilityMeasure& mu, const Observable& f, const char* op) {
  if (mu.size() != f.size()) {
    throw LengthMismatch(std::string(op) + ": measure and observable lengths differ");
  }
}

}  // namespace

double mean(const ProbabilityMeasure& mu, const Observable& f) {
  require_same_length(mu, f, "mean");
  return mu.weights().dot(f.values);
}

Observable center(const ProbabilityMeasure& mu, const Observable& f) {
  require_same_length(mu, f, "center");
  const double m = mu.weights().dot(f.values);
  Observable out(f.values.array() - m, f.certified);
  return out;
}

double covariance(const ProbabilityMeasure& mu, const Observable& f, const Observable& g) {
  require_same_length(mu, f, "covariance");
  require_same_length(mu, g, "covariance");
  const double mf = mu.weights().dot(f.values);
  if (std::abs(mf) > kCenteredTol) throw NotCentered("covariance: first argument is not centered", mf);
  const double mg = mu.weights().dot(g.values);
  if (std::abs(mg) > kCenteredTol) throw NotCentered("covariance: second argument is not centered", mg);
  return (mu.weights().array() * f.values.array() * g.values.array()).sum();
}

double variance(const ProbabilityMeasure& mu, const Observable& f) {
  require_same_length(mu, f, "variance");
  const double m = mu.weights().dot(f.values);
  const Eigen::ArrayXd centered = f.values.array() - m;
  return (mu.weights().array() * centered.square()).sum();
}

double correlation(const ProbabilityMeasure& mu, const Observable& f, const Observable& g) {
  require_same_length(mu, f, "correlation");
  require_same_length(mu, g, "correlation");
  const Eigen::ArrayXd fc = f.values.array() - mu.weights().dot(f.values);
  const Eigen::ArrayXd gc = g.values.array() - mu.weights().dot(g.values);
  return (mu.weights().array() * fc * gc).sum();
}

CertReport check_lipschitz(const FiniteMetricSpace& space, const Observable& f, double K,
                           LipschitzCheckMode mode, const WeightedGraph* graph) {
  if (space.size() != f.size()) {
    throw LengthMismatch("check_lipschitz: observable length does not match space");
  }
  CertReport report;
  report.max_violation = -std::numeric_limits<double>::infinity();

  auto consider = [&](int i, int j) {
    const double violation = std::abs(f.values(i) - f.values(j)) - K * space.dist(i, j);
    if (violation > report.max_violation) {
      report.max_violation = violation;
      report.worst_i = i;
      report.worst_j = j;
    }
  };

  if (mode == LipschitzCheckMode::pairwise) {
    for (int i = 0; i < space.size(); ++i)
      for (int j = i + 1; j < space.size(); ++j) consider(i, j);
  } else {
    if (graph == nullptr) throw ModeMismatch("check_lipschitz: edges mode requires the source graph");
    if (graph->size() != space.size()) {
      throw ModeMismatch("check_lipschitz: graph size does not match space");
    }
    for (const auto& e : graph->edges()) consider(e.u, e.v);
  }

  if (space.size() < 2) report.max_violation = 0.0;  // nothing to violate
  report.certified = report.max_violation <= kLipschitzTol;
  return report;
}

CertReport certify(const FiniteMetricSpace& space, Observable& f, LipschitzCheckMode mode,
                   const WeightedGraph* graph) {
  CertReport report = check_lipschitz(space, f, 1.0, mode, graph);
  if (report.certified) f.certified = true;
  return report;
}

}  // namespace poa
