#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "poa/errors.hpp"

namespace poa {

/// Report produced by validate_metric. Empty (ok()) means the matrix is a
/// metric up to the stated tolerances.
struct ValidationReport {
  struct SymmetryViolation {
    int i, j;
    double forward, backward;
  };
  struct DiagonalViolation {
    int i;
    double value;
  };
  struct TriangleViolation {
    int i, j, k;      // d(i,k) > d(i,j) + d(j,k)
    double slack;     // amount by which the inequality fails
  };

  std::vector<SymmetryViolation> symmetry;
  std::vector<DiagonalViolation> diagonal;
  std::optional<TriangleViolation> worst_triangle;

  bool ok() const { return symmetry.empty() && diagonal.empty() && !worst_triangle; }
  std::string summary() const;
};

/// Checks symmetry, zero diagonal and the triangle inequality (1e-9 absolute
/// slack). O(n^3); callers decide when to pay for it.
ValidationReport validate_metric(const Eigen::MatrixXd& dist);

// Finite metric space: n points with a symmetric nonnegative distance matrix.
// Cheap invariants (square, finite, zero diagonal, symmetry, nonnegativity)
// are enforced at construction; the triangle inequality is validate_metric's
// job. Immutable after construction.
class FiniteMetricSpace {
public:
  explicit FiniteMetricSpace(Eigen::MatrixXd dist, std::vector<std::string> labels = {});

  int size() const { return static_cast<int>(dist_.rows()); }
  double dist(int i, int j) const { return dist_(i, j); }
  const Eigen::MatrixXd& matrix() const { return dist_; }
  double diameter() const { return diameter_; }
  const std::vector<std::string>& labels() const { return labels_; }

  /// Restriction to a subset of points (used by leave-out evaluation).
  FiniteMetricSpace restrict(const std::vector<int>& keep) const;

private:
  Eigen::MatrixXd dist_;
  std::vector<std::string> labels_;
  double diameter_ = 0.0;
};

struct WeightedEdge {
  int u, v;
  double w;
};

// Simple connected weighted graph. No self-loops, no duplicate undirected
// edges, all weights positive.
class WeightedGraph {
public:
  WeightedGraph(int n, std::vector<WeightedEdge> edges);

  int size() const { return n_; }
  const std::vector<WeightedEdge>& edges() const { return edges_; }
  bool connected() const { return connected_; }

private:
  int n_;
  std::vector<WeightedEdge> edges_;
  bool connected_;
};

enum class ShortestPathAlgo { dijkstra, floyd_warshall };

/// Shortest-path metric of a connected weighted graph.
FiniteMetricSpace build_graph_metric(const WeightedGraph& g,
                                     ShortestPathAlgo algo = ShortestPathAlgo::dijkstra);

// Probability measure on the points of a space: nonnegative weights summing
// to one (1e-9 tolerance at construction).
class ProbabilityMeasure {
public:
  explicit ProbabilityMeasure(Eigen::VectorXd weights);

  static ProbabilityMeasure uniform(int n);

  int size() const { return static_cast<int>(weights_.size()); }
  double operator[](int i) const { return weights_(i); }
  const Eigen::VectorXd& weights() const { return weights_; }

private:
  Eigen::VectorXd weights_;
};

/// Scales a nonnegative mass vector to total mass one.
ProbabilityMeasure normalize_measure(const Eigen::VectorXd& raw);

}  // namespace poa
