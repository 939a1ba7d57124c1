#pragma once

// Shared generators for the test suites. Everything is seeded and portable:
// raw mt19937_64 output is mapped to doubles directly.

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "poa/mmspace.hpp"

namespace testutil {

class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return (engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int uniform_int(int lo, int hi) {  // inclusive
    return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

private:
  std::mt19937_64 engine_;
};

/// Euclidean distance matrix of n random points in the unit square.
inline poa::FiniteMetricSpace random_euclidean_space(int n, std::uint64_t seed) {
  Rng rng(seed);
  Eigen::MatrixXd pts(n, 2);
  for (int i = 0; i < n; ++i) {
    pts(i, 0) = rng.uniform();
    pts(i, 1) = rng.uniform();
  }
  Eigen::MatrixXd dist(n, n);
  for (int i = 0; i < n; ++i) {
    dist(i, i) = 0.0;
    for (int j = i + 1; j < n; ++j) {
      const double d = (pts.row(i) - pts.row(j)).norm();
      dist(i, j) = d;
      dist(j, i) = d;
    }
  }
  return poa::FiniteMetricSpace(std::move(dist));
}

/// Random tree: node i >= 1 attaches to a uniform earlier node.
inline poa::WeightedGraph random_tree(int n, std::uint64_t seed, double w_lo = 0.5,
                                      double w_hi = 1.5) {
  Rng rng(seed);
  std::vector<poa::WeightedEdge> edges;
  for (int i = 1; i < n; ++i) {
    edges.push_back({rng.uniform_int(0, i - 1), i, rng.uniform(w_lo, w_hi)});
  }
  return poa::WeightedGraph(n, std::move(edges));
}

/// Tree plus a few extra random edges.
inline poa::WeightedGraph random_graph(int n, int extra_edges, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<poa::WeightedEdge> edges;
  std::vector<std::pair<int, int>> used;
  for (int i = 1; i < n; ++i) {
    const int j = rng.uniform_int(0, i - 1);
    edges.push_back({j, i, rng.uniform(0.5, 1.5)});
    used.emplace_back(std::min(i, j), std::max(i, j));
  }
  int attempts = 0;
  while (extra_edges > 0 && attempts < 100 * extra_edges) {
    ++attempts;
    const int a = rng.uniform_int(0, n - 1);
    const int b = rng.uniform_int(0, n - 1);
    if (a == b) continue;
    const std::pair<int, int> key{std::min(a, b), std::max(a, b)};
    bool dup = false;
    for (const auto& k : used) dup = dup || k == key;
    if (dup) continue;
    used.push_back(key);
    edges.push_back({key.first, key.second, rng.uniform(0.5, 1.5)});
    --extra_edges;
  }
  return poa::WeightedGraph(n, std::move(edges));
}

/// m x k grid with unit edges.
inline poa::WeightedGraph grid_graph(int rows, int cols) {
  std::vector<poa::WeightedEdge> edges;
  auto id = [cols](int r, int c) { return r * cols + c; };
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols) edges.push_back({id(r, c), id(r, c + 1), 1.0});
      if (r + 1 < rows) edges.push_back({id(r, c), id(r + 1, c), 1.0});
    }
  }
  return poa::WeightedGraph(rows * cols, std::move(edges));
}

/// Path with n nodes and constant edge length.
inline poa::WeightedGraph line_graph(int n, double spacing) {
  std::vector<poa::WeightedEdge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, spacing});
  return poa::WeightedGraph(n, std::move(edges));
}

/// Random measure with weights bounded away from zero.
inline poa::ProbabilityMeasure random_measure(int n, std::uint64_t seed, double floor = 0.05) {
  Rng rng(seed);
  Eigen::VectorXd w(n);
  for (int i = 0; i < n; ++i) w(i) = floor + rng.uniform();
  return poa::normalize_measure(w);
}

inline Eigen::VectorXd random_vector(int n, std::uint64_t seed, double lo = -1.0, double hi = 1.0) {
  Rng rng(seed);
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = rng.uniform(lo, hi);
  return v;
}

/// The unit 3-path a-b-c used throughout the docs and tests.
inline poa::FiniteMetricSpace path3_space() {
  Eigen::MatrixXd d(3, 3);
  d << 0, 1, 2, 1, 0, 1, 2, 1, 0;
  return poa::FiniteMetricSpace(d);
}

inline poa::FiniteMetricSpace two_point_space(double d01 = 1.0) {
  Eigen::MatrixXd d(2, 2);
  d << 0, d01, d01, 0;
  return poa::FiniteMetricSpace(d);
}

}  // namespace testutil
