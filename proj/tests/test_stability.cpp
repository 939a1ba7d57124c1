#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "poa/stability.hpp"
#include "test_util.hpp"

using namespace poa;

TEST_CASE("wasserstein1: point masses and identical measures") {
  const FiniteMetricSpace space = testutil::path3_space();
  const ProbabilityMeasure delta_a = normalize_measure(Eigen::Vector3d(1, 0, 0));
  const ProbabilityMeasure delta_c = normalize_measure(Eigen::Vector3d(0, 0, 1));

  const WassersteinResult r = wasserstein1(space, delta_a, delta_c);
  CHECK(r.value == doctest::Approx(2.0));
  CHECK(r.plan.mass(0, 2) == doctest::Approx(1.0));

  const ProbabilityMeasure mu = testutil::random_measure(3, 4);
  CHECK(wasserstein1(space, mu, mu).value == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("wasserstein1: two-point mass shift") {
  const FiniteMetricSpace space = testutil::two_point_space();
  const ProbabilityMeasure mu = normalize_measure(Eigen::Vector2d(0.75, 0.25));
  const ProbabilityMeasure nu = normalize_measure(Eigen::Vector2d(0.25, 0.75));
  const WassersteinResult r = wasserstein1(space, mu, nu);
  CHECK(r.value == doctest::Approx(0.5));
  // plan marginals
  CHECK((r.plan.mass.rowwise().sum() - mu.weights()).lpNorm<Eigen::Infinity>() < 1e-9);
  CHECK((r.plan.mass.colwise().sum().transpose() - nu.weights()).lpNorm<Eigen::Infinity>() <
        1e-9);
}

TEST_CASE("wasserstein1: metric axioms on sampled measures") {
  const WeightedGraph g = testutil::random_graph(8, 5, 12);
  const FiniteMetricSpace space = build_graph_metric(g);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const ProbabilityMeasure a = testutil::random_measure(8, 3 * seed + 1);
    const ProbabilityMeasure b = testutil::random_measure(8, 3 * seed + 2);
    const ProbabilityMeasure c = testutil::random_measure(8, 3 * seed + 3);
    const double ab = wasserstein1(space, a, b).value;
    const double ba = wasserstein1(space, b, a).value;
    const double bc = wasserstein1(space, b, c).value;
    const double ac = wasserstein1(space, a, c).value;
    CHECK(ab == doctest::Approx(ba).epsilon(1e-9));
    CHECK(ac <= ab + bc + 1e-8);
    CHECK(ab >= 0.0);
  }
}

TEST_CASE("wasserstein1: kantorovich duality cross-check") {
  // max <mu - nu, f> over the centered Lipschitz polytope equals w1
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const FiniteMetricSpace space = testutil::random_euclidean_space(7, seed);
    const ProbabilityMeasure mu = testutil::random_measure(7, seed + 50);
    const ProbabilityMeasure nu = testutil::random_measure(7, seed + 90);
    const double primal = wasserstein1(space, mu, nu).value;
    const auto polytope =
        build_polytope(space, mu, {}, ConstraintMode::pairwise, nullptr);
    const Eigen::VectorXd witness = lp_maximize(mu.weights() - nu.weights(), polytope);
    const double dual = (mu.weights() - nu.weights()).dot(witness);
    CHECK(primal == doctest::Approx(dual).epsilon(1e-8));
  }
}

TEST_CASE("mean_stability_audit: tight two-point case") {
  const FiniteMetricSpace space = testutil::two_point_space();
  const ProbabilityMeasure mu = normalize_measure(Eigen::Vector2d(1, 0));
  const ProbabilityMeasure nu = normalize_measure(Eigen::Vector2d(0.5, 0.5));
  Observable f(Eigen::Vector2d(0.5, -0.5));
  certify(space, f);

  const MeanAuditReport report = mean_stability_audit(space, mu, nu, {f});
  CHECK(report.w1 == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(report.max_gap == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(report.pass);

  Observable raw(Eigen::Vector2d(0.5, -0.5));
  CHECK_THROWS_AS(mean_stability_audit(space, mu, nu, {raw}), UncertifiedObservable);
}

TEST_CASE("mean_stability_audit: random families always pass") {
  const WeightedGraph g = testutil::random_graph(20, 15, 77);
  const FiniteMetricSpace space = build_graph_metric(g);
  const ProbabilityMeasure mu = testutil::random_measure(20, 5);
  const ProbabilityMeasure nu = testutil::random_measure(20, 6);
  const std::vector<Observable> family = default_audit_family(space, mu, nullptr, 50, 7);
  CHECK(family.size() == 70);  // 20 distance observables + 50 vertices
  const MeanAuditReport report = mean_stability_audit(space, mu, nu, family);
  CHECK(report.pass);
  CHECK(report.max_gap <= report.bound);

  const MeanAuditReport same = mean_stability_audit(space, mu, mu, family);
  CHECK(same.max_gap == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(same.pass);
}

TEST_CASE("covariance_stability_audit: documented two-point case") {
  const FiniteMetricSpace space = testutil::two_point_space();
  const ProbabilityMeasure mu = normalize_measure(Eigen::Vector2d(1, 0));
  const ProbabilityMeasure nu = normalize_measure(Eigen::Vector2d(0.5, 0.5));
  Observable f(Eigen::Vector2d(0.5, -0.5));
  certify(space, f);

  const CovarianceAuditReport report =
      covariance_stability_audit(space, mu, nu, {{f, f}});
  CHECK(report.w1 == doctest::Approx(0.5));
  CHECK(report.max_sup_gap == doctest::Approx(0.5));    // |M_mu f - M_nu f|
  CHECK(report.max_cov_gap == doctest::Approx(0.25));   // |0 - var_nu|
  CHECK(report.cov_bound == doctest::Approx(4.0 * 1.0 * 0.5 + 1e-8));
  CHECK(report.pass);
}

TEST_CASE("covariance_stability_audit: random pairs on a tree always pass") {
  const WeightedGraph g = testutil::random_tree(15, 31);
  const FiniteMetricSpace space = build_graph_metric(g);
  const ProbabilityMeasure mu = testutil::random_measure(15, 8);
  const ProbabilityMeasure nu = testutil::random_measure(15, 9);
  const std::vector<Observable> family = default_audit_family(space, mu, nullptr, 15, 10);

  std::vector<std::pair<Observable, Observable>> pairs;
  for (std::size_t i = 0; i + 1 < family.size() && pairs.size() < 30; i += 1) {
    pairs.emplace_back(family[i], family[i + 1]);
  }
  const CovarianceAuditReport report = covariance_stability_audit(space, mu, nu, pairs);
  CHECK(report.pass);

  const CovarianceAuditReport same = covariance_stability_audit(space, mu, mu, pairs);
  CHECK(same.max_cov_gap == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(same.pass);
}

TEST_CASE("functional_hausdorff") {
  // identical functions on the same single point
  Eigen::VectorXd phi(1), psi(1);
  phi << 0;
  psi << 0;
  Eigen::MatrixXd d0 = Eigen::MatrixXd::Zero(1, 1);
  CHECK(functional_hausdorff(phi, psi, d0) == doctest::Approx(0.0));

  psi << 3;
  CHECK(functional_hausdorff(phi, psi, d0) == doctest::Approx(3.0));

  psi << 0.5;
  Eigen::MatrixXd d1(1, 1);
  d1 << 1.0;
  CHECK(functional_hausdorff(phi, psi, d1) == doctest::Approx(1.0));

  Eigen::MatrixXd missing(1, 1);
  missing << std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(functional_hausdorff(phi, psi, missing), MissingDistance);

  // A = B, phi = psi on a larger set -> 0
  const FiniteMetricSpace space = testutil::random_euclidean_space(6, 2);
  const Eigen::VectorXd values = space.matrix().col(0);
  CHECK(functional_hausdorff(values, values, space.matrix()) == doctest::Approx(0.0));
}

TEST_CASE("correspondence_distortion") {
  const FiniteMetricSpace path = testutil::path3_space();
  Correspondence identity;
  identity.pairs = {{0, 0}, {1, 1}, {2, 2}};
  const Eigen::VectorXd f(Eigen::Vector3d(1, 0, -1));

  const DistortionResult same = correspondence_distortion(
      identity, path.matrix(), path.matrix(), f, f);
  CHECK(same.dis == doctest::Approx(0.0));
  CHECK(same.fdis == doctest::Approx(0.0));
  CHECK(same.gh_score == doctest::Approx(0.0));

  // two-point spaces with distances 1 vs 2
  Eigen::MatrixXd d1(2, 2), d2(2, 2);
  d1 << 0, 1, 1, 0;
  d2 << 0, 2, 2, 0;
  Correspondence full;
  full.pairs = {{0, 0}, {1, 1}};
  const Eigen::VectorXd zeros2 = Eigen::VectorXd::Zero(2);
  const DistortionResult stretched = correspondence_distortion(full, d1, d2, zeros2, zeros2);
  CHECK(stretched.dis == doctest::Approx(1.0));
  CHECK(stretched.fdis == doctest::Approx(0.0));
  CHECK(stretched.gh_score == doctest::Approx(0.5));

  // equal paths, scaled functions
  const Eigen::VectorXd f2(Eigen::Vector3d(0.5, 0, -0.5));
  const DistortionResult halved = correspondence_distortion(
      identity, path.matrix(), path.matrix(), f, f2);
  CHECK(halved.dis == doctest::Approx(0.0));
  CHECK(halved.fdis == doctest::Approx(0.5));
  CHECK(halved.gh_score == doctest::Approx(0.5));

  Correspondence partial;
  partial.pairs = {{0, 0}, {1, 1}};  // misses left index 2
  CHECK_THROWS_AS(
      correspondence_distortion(partial, path.matrix(), path.matrix(), f, f), NotSurjective);
}

TEST_CASE("empirical_sample: determinism and point masses") {
  const FiniteMetricSpace space = testutil::two_point_space();
  const ProbabilityMeasure mu = normalize_measure(Eigen::Vector2d(0.75, 0.25));

  const ProbabilityMeasure a = empirical_sample(space, mu, 500, 42);
  const ProbabilityMeasure b = empirical_sample(space, mu, 500, 42);
  CHECK(a.weights() == b.weights());  // bitwise determinism

  const ProbabilityMeasure delta = normalize_measure(Eigen::Vector2d(1, 0));
  const ProbabilityMeasure sampled = empirical_sample(space, delta, 37, 7);
  CHECK(sampled[0] == doctest::Approx(1.0));
  CHECK(sampled[1] == doctest::Approx(0.0));

  // binomial concentration: reported, not asserted
  const double p_hat = a[0];
  const double drift = std::abs(p_hat - 0.75);
  if (drift > 3.0 / std::sqrt(500.0)) {
    MESSAGE("empirical frequency drift beyond 3/sqrt(m): ", drift);
  }
  CHECK(p_hat >= 0.0);
  CHECK(p_hat <= 1.0);
}

TEST_CASE("consistency trend: empirical mean gaps shrink as m doubles") {
  const WeightedGraph g = testutil::random_graph(20, 10, 123);
  const FiniteMetricSpace space = build_graph_metric(g);
  const ProbabilityMeasure mu = testutil::random_measure(20, 124);
  SolverConfig cfg;
  cfg.restarts = 6;
  cfg.seed = 5;
  const PrincipalObservableSet pos = solve_poa(space, mu, 3, cfg);
  REQUIRE(pos.count() >= 1);

  std::vector<double> medians;
  for (int m : {25, 50, 100, 200}) {
    std::vector<double> gaps;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const ProbabilityMeasure mu_m = empirical_sample(space, mu, m, 1000 + seed);
      double sup = 0.0;
      for (const auto& phi : pos.observables) {
        sup = std::max(sup, std::abs(mean(mu, phi) - mean(mu_m, phi)));
      }
      gaps.push_back(sup);
    }
    std::sort(gaps.begin(), gaps.end());
    medians.push_back(0.5 * (gaps[9] + gaps[10]));
  }
  for (std::size_t i = 1; i < medians.size(); ++i) {
    CHECK(medians[i] <= medians[i - 1] + 1e-12);
  }
}
