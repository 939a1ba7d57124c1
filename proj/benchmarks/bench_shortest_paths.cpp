#include <benchmark/benchmark.h>

#include "poa/mmspace.hpp"

namespace {

poa::WeightedGraph make_grid(int side) {
  std::vector<poa::WeightedEdge> edges;
  auto id = [side](int r, int c) { return r * side + c; };
  for (int r = 0; r < side; ++r)
    for (int c = 0; c < side; ++c) {
      if (c + 1 < side) edges.push_back({id(r, c), id(r, c + 1), 1.0});
      if (r + 1 < side) edges.push_back({id(r, c), id(r + 1, c), 1.0});
    }
  return poa::WeightedGraph(side * side, std::move(edges));
}

void BM_GraphMetricDijkstra(benchmark::State& state) {
  const poa::WeightedGraph g = make_grid(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(poa::build_graph_metric(g, poa::ShortestPathAlgo::dijkstra));
  }
}
BENCHMARK(BM_GraphMetricDijkstra)->Arg(8)->Arg(16)->Arg(24);

void BM_GraphMetricFloydWarshall(benchmark::State& state) {
  const poa::WeightedGraph g = make_grid(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(poa::build_graph_metric(g, poa::ShortestPathAlgo::floyd_warshall));
  }
}
BENCHMARK(BM_GraphMetricFloydWarshall)->Arg(8)->Arg(16)->Arg(24);

}  // namespace
