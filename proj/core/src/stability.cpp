#include "poa/stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "poa/simplex.hpp"

namespace poa {

namespace {

constexpr double kAuditTol = 1e-8;

void require_same_space(const FiniteMetricSpace& space, const ProbabilityMeasure& mu,
                        const ProbabilityMeasure& nu) {
  if (mu.size() != space.size() || nu.size() != space.size()) {
    throw LengthMismatch("measures must live on the space's points");
  }
}

}  // namespace

WassersteinResult wasserstein1(const FiniteMetricSpace& space, const ProbabilityMeasure& mu,
                               const ProbabilityMeasure& nu) {
  require_same_space(space, mu, nu);
  const int n = space.size();

  // min sum h_ij d_ij over couplings == max of the negated cost in standard
  // form; variables are the n^2 plan entries.
  StandardLp lp;
  lp.M = Eigen::MatrixXd::Zero(2 * n, n * n);
  lp.r.resize(2 * n);
  lp.c.resize(n * n);
  for (int i = 0; i < n; ++i) {
    lp.r(i) = mu[i];
    lp.r(n + i) = nu[i];
    for (int j = 0; j < n; ++j) {
      const int var = i * n + j;
      lp.M(i, var) = 1.0;      // row sums = mu
      lp.M(n + j, var) = 1.0;  // column sums = nu
      lp.c(var) = -space.dist(i, j);
    }
  }

  const StandardLpSolution sol = simplex_solve(lp);
  if (sol.status != LpStatus::optimal) {
    throw InternalSolverError("wasserstein1: transport LP did not solve");
  }

  WassersteinResult result;
  result.plan.mass.resize(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) result.plan.mass(i, j) = std::max(0.0, sol.z(i * n + j));
  result.plan.cost = (result.plan.mass.array() * space.matrix().array()).sum();
  result.value = result.plan.cost;

  const double marginal_err =
      std::max((result.plan.mass.rowwise().sum() - mu.weights()).lpNorm<Eigen::Infinity>(),
               (result.plan.mass.colwise().sum().transpose() - nu.weights())
                   .lpNorm<Eigen::Infinity>());
  if (marginal_err > 1e-9) {
    throw InternalSolverError("wasserstein1: transport plan marginals off tolerance");
  }
  return result;
}

MeanAuditReport mean_stability_audit(const FiniteMetricSpace& space, const ProbabilityMeasure& mu,
                                     const ProbabilityMeasure& nu,
                                     const std::vector<Observable>& family) {
  require_same_space(space, mu, nu);
  MeanAuditReport report;
  report.family_size = static_cast<int>(family.size());
  report.w1 = wasserstein1(space, mu, nu).value;
  report.bound = report.w1 + kAuditTol;
  for (int idx = 0; idx < static_cast<int>(family.size()); ++idx) {
    const Observable& f = family[idx];
    if (!f.certified) throw UncertifiedObservable("mean audit: family member not certified");
    const double gap = std::abs(mean(mu, f) - mean(nu, f));
    if (gap > report.max_gap) {
      report.max_gap = gap;
      report.argmax_index = idx;
    }
  }
  report.pass = report.max_gap <= report.bound;
  return report;
}

CovarianceAuditReport covariance_stability_audit(
    const FiniteMetricSpace& space, const ProbabilityMeasure& mu, const ProbabilityMeasure& nu,
    const std::vector<std::pair<Observable, Observable>>& pairs) {
  require_same_space(space, mu, nu);
  CovarianceAuditReport report;
  report.pair_count = static_cast<int>(pairs.size());
  report.w1 = wasserstein1(space, mu, nu).value;
  const double diameter = space.diameter();
  report.epsilon = std::max(1.0, 4.0 * diameter) * report.w1 + kAuditTol;
  report.sup_bound = report.w1 + kAuditTol;
  report.cov_bound = 4.0 * diameter * report.w1 + kAuditTol;

  for (const auto& [f, g] : pairs) {
    if (!f.certified || !g.certified) {
      throw UncertifiedObservable("covariance audit: pair member not certified");
    }
    const Observable f_mu = center(mu, f), g_mu = center(mu, g);
    const Observable f_nu = center(nu, f), g_nu = center(nu, g);

    const double sup_gap =
        std::max((f_mu.values - f_nu.values).lpNorm<Eigen::Infinity>(),
                 (g_mu.values - g_nu.values).lpNorm<Eigen::Infinity>());
    const double cov_gap = std::abs(covariance(mu, f_mu, g_mu) - covariance(nu, f_nu, g_nu));
    report.max_sup_gap = std::max(report.max_sup_gap, sup_gap);
    report.max_cov_gap = std::max(report.max_cov_gap, cov_gap);
  }
  report.pass = report.max_sup_gap <= report.sup_bound && report.max_cov_gap <= report.cov_bound;
  return report;
}

double functional_hausdorff(const Eigen::VectorXd& phi, const Eigen::VectorXd& psi,
                            const Eigen::MatrixXd& cross_dist) {
  if (cross_dist.rows() != phi.size() || cross_dist.cols() != psi.size()) {
    throw MissingDistance("functional_hausdorff: cross distance table has wrong shape");
  }
  if (phi.size() == 0 || psi.size() == 0) {
    throw MissingDistance("functional_hausdorff: empty domain");
  }
  if (!cross_dist.allFinite()) {
    throw MissingDistance("functional_hausdorff: cross distance table has missing entries");
  }

  auto directed = [&](bool forward) {
    double worst = 0.0;
    const int na = forward ? static_cast<int>(phi.size()) : static_cast<int>(psi.size());
    const int nb = forward ? static_cast<int>(psi.size()) : static_cast<int>(phi.size());
    for (int a = 0; a < na; ++a) {
      double best = std::numeric_limits<double>::infinity();
      for (int b = 0; b < nb; ++b) {
        const double d = forward ? cross_dist(a, b) : cross_dist(b, a);
        const double gap = forward ? std::abs(phi(a) - psi(b)) : std::abs(psi(a) - phi(b));
        best = std::min(best, std::max(d, gap));
      }
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(true), directed(false));
}

DistortionResult correspondence_distortion(const Correspondence& R, const Eigen::MatrixXd& d_left,
                                           const Eigen::MatrixXd& d_right,
                                           const Eigen::VectorXd& f_left,
                                           const Eigen::VectorXd& f_right) {
  const int n_left = static_cast<int>(d_left.rows());
  const int n_right = static_cast<int>(d_right.rows());
  if (d_left.cols() != n_left || d_right.cols() != n_right) {
    throw SizeMismatch("correspondence_distortion: distance tables must be square");
  }
  if (f_left.size() != n_left || f_right.size() != n_right) {
    throw SizeMismatch("correspondence_distortion: value tables must cover all indices");
  }

  std::vector<char> left_hit(n_left, 0), right_hit(n_right, 0);
  for (const auto& [a, b] : R.pairs) {
    if (a < 0 || a >= n_left || b < 0 || b >= n_right) {
      throw SizeMismatch("correspondence_distortion: pair index out of range");
    }
    left_hit[a] = 1;
    right_hit[b] = 1;
  }
  if (std::find(left_hit.begin(), left_hit.end(), 0) != left_hit.end() ||
      std::find(right_hit.begin(), right_hit.end(), 0) != right_hit.end()) {
    throw NotSurjective("correspondence_distortion: relation must project onto both sides");
  }

  DistortionResult result;
  for (std::size_t p = 0; p < R.pairs.size(); ++p) {
    const auto& [a1, b1] = R.pairs[p];
    result.fdis = std::max(result.fdis, std::abs(f_left(a1) - f_right(b1)));
    for (std::size_t q = p; q < R.pairs.size(); ++q) {
      const auto& [a2, b2] = R.pairs[q];
      result.dis = std::max(result.dis, std::abs(d_left(a1, a2) - d_right(b1, b2)));
    }
  }
  result.gh_score = 0.5 * std::max(result.dis, 2.0 * result.fdis);
  return result;
}

ProbabilityMeasure empirical_sample(const FiniteMetricSpace& space, const ProbabilityMeasure& mu,
                                    int m, std::uint64_t seed) {
  if (mu.size() != space.size()) throw LengthMismatch("empirical_sample: measure/space mismatch");
  if (m < 1) throw Error("empirical_sample: need m >= 1");

  const int n = space.size();
  Eigen::VectorXd cdf(n);
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    acc += mu[i];
    cdf(i) = acc;
  }
  cdf(n - 1) = 1.0;

  std::mt19937_64 engine(seed);
  Eigen::VectorXd counts = Eigen::VectorXd::Zero(n);
  for (int draw = 0; draw < m; ++draw) {
    const double u = (engine() >> 11) * 0x1.0p-53;
    int lo = 0, hi = n - 1;
    while (lo < hi) {
      const int mid = (lo + hi) / 2;
      if (u < cdf(mid))
        hi = mid;
      else
        lo = mid + 1;
    }
    counts(lo) += 1.0;
  }
  return ProbabilityMeasure(counts / static_cast<double>(m));
}

std::vector<Observable> default_audit_family(const FiniteMetricSpace& space,
                                             const ProbabilityMeasure& mu,
                                             const PrincipalObservableSet* pos,
                                             int random_vertices, std::uint64_t seed) {
  std::vector<Observable> family;
  if (pos != nullptr) {
    for (const auto& phi : pos->observables) family.push_back(phi);
  }
  for (int b = 0; b < space.size(); ++b) {
    Observable f(space.matrix().col(b));
    certify(space, f);
    family.push_back(std::move(f));
  }
  if (random_vertices > 0) {
    const LipschitzPolytope polytope =
        build_polytope(space, mu, {}, ConstraintMode::pairwise, nullptr);
    std::mt19937_64 engine(seed);
    for (int v = 0; v < random_vertices; ++v) {
      Eigen::VectorXd direction(space.size());
      // raw uniform [-1,1] components are enough to spread over vertices
      for (int i = 0; i < space.size(); ++i) {
        direction(i) = 2.0 * ((engine() >> 11) * 0x1.0p-53) - 1.0;
      }
      Observable f(lp_maximize(direction, polytope));
      certify(space, f);
      if (!f.certified) throw InternalSolverError("default_audit_family: vertex not certified");
      family.push_back(std::move(f));
    }
  }
  return family;
}

}  // namespace poa
