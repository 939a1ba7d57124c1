#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "poa/embedding.hpp"
#include "test_util.hpp"

using namespace poa;

namespace {

PrincipalObservableSet path3_pos() {
  const FiniteMetricSpace space = testutil::path3_space();
  return solve_poa(space, ProbabilityMeasure::uniform(3), 2, SolverConfig{});
}

}  // namespace

TEST_CASE("embed: three-point path coordinates") {
  const PrincipalObservableSet pos = path3_pos();
  const Embedding e = embed(pos, 2);
  REQUIRE(e.points() == 3);
  REQUIRE(e.dimension() == 2);
  CHECK(e.norm_tag == NormTag::linf);
  // first column is phi1 exactly
  CHECK(e.coords(0, 0) == doctest::Approx(1.0));
  CHECK(e.coords(1, 0) == doctest::Approx(0.0).epsilon(1e-8));
  CHECK(e.coords(2, 0) == doctest::Approx(-1.0));
  // second column carries |phi2| = (1/3, 2/3, 1/3) up to the sign rule
  CHECK(std::abs(e.coords(0, 1)) == doctest::Approx(1.0 / 3));
  CHECK(std::abs(e.coords(1, 1)) == doctest::Approx(2.0 / 3));

  // delta(a,c) vanishes for k=2: the L-inf row difference is (2, 0)
  const DistortionReport report = distortion_report(testutil::path3_space(), e);
  CHECK(report.deltas[1] == doctest::Approx(0.0).epsilon(1e-9));  // pair (0,2)
}

TEST_CASE("embed: k checks") {
  const PrincipalObservableSet pos = path3_pos();
  CHECK_THROWS_AS(embed(pos, 0), NotEnoughObservables);
  CHECK_THROWS_AS(embed(pos, 3), NotEnoughObservables);

  const PrincipalObservableSet two =
      solve_poa(testutil::two_point_space(), ProbabilityMeasure::uniform(2), 1, SolverConfig{});
  const Embedding e = embed(two, 1);
  CHECK(e.coords(0, 0) == doctest::Approx(0.5));
  CHECK(e.coords(1, 0) == doctest::Approx(-0.5));
}

TEST_CASE("distortion_report: exact and collapsed embeddings") {
  Eigen::MatrixXd line(3, 3);
  line << 0, 1, 2, 1, 0, 1, 2, 1, 0;
  const FiniteMetricSpace space{line};

  Embedding exact;
  exact.coords.resize(3, 1);
  exact.coords << 0, 1, 2;
  exact.norm_tag = NormTag::l2;
  const DistortionReport perfect = distortion_report(space, exact);
  CHECK(perfect.max == doctest::Approx(0.0));
  CHECK(perfect.fraction_below_0_1 == doctest::Approx(1.0));

  Embedding collapsed;
  collapsed.coords = Eigen::MatrixXd::Zero(3, 2);
  const DistortionReport worst = distortion_report(space, collapsed);
  REQUIRE(worst.deltas.size() == 3);
  CHECK(worst.deltas[0] == doctest::Approx(1.0));  // (0,1)
  CHECK(worst.deltas[1] == doctest::Approx(2.0));  // (0,2)
  CHECK(worst.max == doctest::Approx(2.0));

  Embedding wrong_size;
  wrong_size.coords = Eigen::MatrixXd::Zero(4, 2);
  CHECK_THROWS_AS(distortion_report(space, wrong_size), SizeMismatch);
}

TEST_CASE("distortion_report: histogram bookkeeping") {
  const FiniteMetricSpace space = testutil::random_euclidean_space(14, 3);
  const PrincipalObservableSet pos = solve_poa(space, ProbabilityMeasure::uniform(14), 2,
                                               SolverConfig{});
  const Embedding e = embed(pos, 2);
  const DistortionReport report = distortion_report(space, e, 12);
  CHECK(report.counts.size() == 12);
  CHECK(std::accumulate(report.counts.begin(), report.counts.end(), 0L) == 14 * 13 / 2);
  for (double d : report.deltas) CHECK(d >= 0.0);

  // permutation invariance of the histogram
  std::vector<int> perm(14);
  std::iota(perm.begin(), perm.end(), 0);
  std::reverse(perm.begin(), perm.end());
  Eigen::MatrixXd shuffled(14, 14);
  for (int i = 0; i < 14; ++i)
    for (int j = 0; j < 14; ++j) shuffled(i, j) = space.dist(perm[i], perm[j]);
  Embedding shuffled_e;
  shuffled_e.coords.resize(14, 2);
  for (int i = 0; i < 14; ++i) shuffled_e.coords.row(i) = e.coords.row(perm[i]);
  shuffled_e.norm_tag = NormTag::linf;
  const DistortionReport shuffled_report =
      distortion_report(FiniteMetricSpace{shuffled}, shuffled_e, 12);
  CHECK(shuffled_report.counts == report.counts);
}

TEST_CASE("POA embeddings only compress distances") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const WeightedGraph g = testutil::random_graph(12, 6, seed);
    const FiniteMetricSpace space = build_graph_metric(g);
    const ProbabilityMeasure mu = testutil::random_measure(12, seed);
    SolverConfig cfg;
    cfg.restarts = 6;
    cfg.seed = seed;
    const PrincipalObservableSet pos = solve_poa(space, mu, 3, cfg);
    const Embedding e = embed(pos, std::min(3, pos.count()));
    for (int i = 0; i < 12; ++i)
      for (int j = i + 1; j < 12; ++j) {
        CHECK(e.row_distance(i, j) <= space.dist(i, j) + 1e-8);
      }
  }
}

TEST_CASE("classical_mds: collinear points embed exactly in 1-D") {
  Eigen::MatrixXd d(3, 3);
  d << 0, 1, 2, 1, 0, 1, 2, 1, 0;
  const Embedding e = classical_mds(FiniteMetricSpace{d}, 1);
  CHECK(e.norm_tag == NormTag::l2);
  // (-1, 0, 1) up to sign and order; the sign rule fixes the orientation
  CHECK(std::abs(e.coords(0, 0) - e.coords(2, 0)) == doctest::Approx(2.0));
  CHECK(e.coords(1, 0) == doctest::Approx(0.0).epsilon(1e-9));
  const DistortionReport report = distortion_report(FiniteMetricSpace{d}, e);
  CHECK(report.max <= 1e-8);
}

TEST_CASE("classical_mds: 4-cycle graph metric keeps residual distortion") {
  WeightedGraph g(4, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}, {3, 0, 1.0}});
  const FiniteMetricSpace space = build_graph_metric(g);
  const Embedding e = classical_mds(space, 2);
  // embedded square: adjacent pairs at sqrt(2), opposite pairs at 2
  CHECK(e.row_distance(0, 1) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-7));
  CHECK(e.row_distance(0, 2) == doctest::Approx(2.0).epsilon(1e-7));
  const DistortionReport report = distortion_report(space, e);
  CHECK(report.max > 0.4);  // graph metric is not Euclidean-exact
}

TEST_CASE("classical_mds: full rank reproduces Euclidean metrics") {
  const FiniteMetricSpace space = testutil::random_euclidean_space(10, 17);
  const Embedding e = classical_mds(space, 9);
  for (int i = 0; i < 10; ++i)
    for (int j = i + 1; j < 10; ++j) {
      CHECK(e.row_distance(i, j) == doctest::Approx(space.dist(i, j)).epsilon(1e-7));
    }
  CHECK_THROWS_AS(classical_mds(space, 10), SizeMismatch);
}
