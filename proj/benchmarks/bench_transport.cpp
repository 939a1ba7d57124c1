#include <benchmark/benchmark.h>

#include <random>

#include "poa/stability.hpp"

namespace {

void BM_Wasserstein1(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 engine(7);
  Eigen::MatrixXd pts(n, 2);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < 2; ++j) pts(i, j) = (engine() >> 11) * 0x1.0p-53;
  Eigen::MatrixXd dist(n, n);
  for (int i = 0; i < n; ++i) {
    dist(i, i) = 0;
    for (int j = i + 1; j < n; ++j) {
      dist(i, j) = dist(j, i) = (pts.row(i) - pts.row(j)).norm();
    }
  }
  const poa::FiniteMetricSpace space{std::move(dist)};

  Eigen::VectorXd wa(n), wb(n);
  for (int i = 0; i < n; ++i) {
    wa(i) = 0.1 + (engine() >> 11) * 0x1.0p-53;
    wb(i) = 0.1 + (engine() >> 11) * 0x1.0p-53;
  }
  const poa::ProbabilityMeasure mu = poa::normalize_measure(wa);
  const poa::ProbabilityMeasure nu = poa::normalize_measure(wb);

  for (auto _ : state) {
    benchmark::DoNotOptimize(poa::wasserstein1(space, mu, nu));
  }
}
BENCHMARK(BM_Wasserstein1)->Arg(10)->Arg(20)->Arg(30);

}  // namespace
