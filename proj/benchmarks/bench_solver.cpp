#include <benchmark/benchmark.h>

#include "poa/poa_solver.hpp"

namespace {

poa::WeightedGraph make_path(int n) {
  std::vector<poa::WeightedEdge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, 1.0 / (n - 1)});
  return poa::WeightedGraph(n, std::move(edges));
}

void BM_LpMaximizeEdges(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const poa::WeightedGraph g = make_path(n);
  const poa::FiniteMetricSpace space = poa::build_graph_metric(g);
  const poa::ProbabilityMeasure mu = poa::ProbabilityMeasure::uniform(n);
  const auto polytope = poa::build_polytope(space, mu, {}, poa::ConstraintMode::edges, &g);
  const Eigen::VectorXd c = space.matrix().col(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(poa::lp_maximize(c, polytope));
  }
}
BENCHMARK(BM_LpMaximizeEdges)->Arg(51)->Arg(101)->Arg(201);

void BM_FirstPrincipalObservable(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const poa::WeightedGraph g = make_path(n);
  const poa::FiniteMetricSpace space = poa::build_graph_metric(g);
  const poa::ProbabilityMeasure mu = poa::ProbabilityMeasure::uniform(n);
  poa::SolverConfig cfg;
  cfg.restarts = 4;
  cfg.constraint_mode = poa::ConstraintMode::edges;
  for (auto _ : state) {
    benchmark::DoNotOptimize(poa::solve_principal_observable(space, mu, {}, cfg, &g));
  }
}
BENCHMARK(BM_FirstPrincipalObservable)->Arg(31)->Arg(61);

}  // namespace
