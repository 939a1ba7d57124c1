#include "poa/mmspace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <set>
#include <sstream>

namespace poa {

namespace {

constexpr double kSymmetryTol = 1e-9;
constexpr double kTriangleTol = 1e-9;

}  // namespace

std::string ValidationReport::summary() const {
  if (ok()) return "valid metric";
  std::ostringstream os;
  if (!symmetry.empty()) {
    os << symmetry.size() << " symmetry violation(s), first at (" << symmetry.front().i << ","
       << symmetry.front().j << "): " << symmetry.front().forward << " vs "
       << symmetry.front().backward << "; ";
  }
  if (!diagonal.empty()) {
    os << diagonal.size() << " nonzero diagonal entr(ies), first at " << diagonal.front().i
       << " = " << diagonal.front().value << "; ";
  }
  if (worst_triangle) {
    os << "worst triangle violation at (" << worst_triangle->i << "," << worst_triangle->j << ","
       << worst_triangle->k << "), slack " << worst_triangle->slack;
  }
  return os.str();
}

ValidationReport validate_metric(const Eigen::MatrixXd& dist) {
  if (dist.rows() != dist.cols()) throw InvalidMetric("validate_metric: matrix must be square");
  const int n = static_cast<int>(dist.rows());
  ValidationReport report;

  for (int i = 0; i < n; ++i) {
    if (std::abs(dist(i, i)) > 0.0) report.diagonal.push_back({i, dist(i, i)});
    for (int j = i + 1; j < n; ++j) {
      if (std::abs(dist(i, j) - dist(j, i)) > kSymmetryTol) {
        report.symmetry.push_back({i, j, dist(i, j), dist(j, i)});
      }
    }
  }

  double worst = kTriangleTol;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      for (int k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        const double slack = dist(i, k) - dist(i, j) - dist(j, k);
        if (slack > worst) {
          worst = slack;
          report.worst_triangle = ValidationReport::TriangleViolation{i, j, k, slack};
        }
      }
    }
  }
  return report;
}

FiniteMetricSpace::FiniteMetricSpace(Eigen::MatrixXd dist, std::vector<std::string> labels)
    : dist_(std::move(dist)), labels_(std::move(labels)) {
  if (dist_.rows() != dist_.cols()) throw InvalidMetric("distance matrix must be square");
  if (dist_.rows() == 0) throw InvalidMetric("space must contain at least one point");
  if (!labels_.empty() && static_cast<int>(labels_.size()) != dist_.rows()) {
    throw InvalidMetric("label count does not match point count");
  }
  const int n = static_cast<int>(dist_.rows());
  for (int i = 0; i < n; ++i) {
    if (dist_(i, i) != 0.0) throw InvalidMetric("distance matrix must have zero diagonal");
    for (int j = 0; j < n; ++j) {
      const double d = dist_(i, j);
      if (!std::isfinite(d)) throw InvalidMetric("distance matrix has a non-finite entry");
      if (d < 0.0) throw InvalidMetric("distance matrix has a negative entry");
      if (std::abs(d - dist_(j, i)) > kSymmetryTol) {
        throw InvalidMetric("distance matrix is not symmetric");
      }
    }
  }
  diameter_ = dist_.maxCoeff();
}

FiniteMetricSpace FiniteMetricSpace::restrict(const std::vector<int>& keep) const {
  const int m = static_cast<int>(keep.size());
  Eigen::MatrixXd sub(m, m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) sub(a, b) = dist_(keep[a], keep[b]);
  std::vector<std::string> sub_labels;
  if (!labels_.empty()) {
    sub_labels.reserve(m);
    for (int idx : keep) sub_labels.push_back(labels_[idx]);
  }
  return FiniteMetricSpace(std::move(sub), std::move(sub_labels));
}

WeightedGraph::WeightedGraph(int n, std::vector<WeightedEdge> edges)
    : n_(n), edges_(std::move(edges)) {
  if (n_ <= 0) throw InvalidGraph("graph must have at least one node");
  std::set<std::pair<int, int>> seen;
  std::vector<std::vector<int>> adj(n_);
  for (const auto& e : edges_) {
    if (e.u < 0 || e.u >= n_ || e.v < 0 || e.v >= n_) throw InvalidGraph("edge endpoint out of range");
    if (e.u == e.v) throw InvalidGraph("self-loops are not allowed");
    if (!(e.w > 0.0) || !std::isfinite(e.w)) {
      throw NonPositiveWeight("edge weights must be positive and finite");
    }
    auto key = std::minmax(e.u, e.v);
    if (!seen.insert(key).second) throw InvalidGraph("duplicate undirected edge");
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  // BFS reachability from node 0.
  std::vector<char> visited(n_, 0);
  std::queue<int> frontier;
  frontier.push(0);
  visited[0] = 1;
  int count = 1;
  while (!frontier.empty()) {
    const int u = frontier.front();
    frontier.pop();
    for (int v : adj[u]) {
      if (!visited[v]) {
        visited[v] = 1;
        ++count;
        frontier.push(v);
      }
    }
  }
  connected_ = (count == n_);
}

namespace {

void dijkstra_from(int source, int n, const std::vector<std::vector<std::pair<int, double>>>& adj,
                   Eigen::MatrixXd& dist) {
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
  std::vector<double> d(n, std::numeric_limits<double>::infinity());
  d[source] = 0.0;
  heap.emplace(0.0, source);
  while (!heap.empty()) {
    auto [du, u] = heap.top();
    heap.pop();
    if (du > d[u]) continue;
    for (const auto& [v, w] : adj[u]) {
      const double cand = du + w;
      if (cand < d[v]) {
        d[v] = cand;
        heap.emplace(cand, v);
      }
    }
  }
  for (int v = 0; v < n; ++v) dist(source, v) = d[v];
}

}  // namespace

FiniteMetricSpace build_graph_metric(const WeightedGraph& g, ShortestPathAlgo algo) {
  if (!g.connected()) throw DisconnectedGraph("graph metric requires a connected graph");
  const int n = g.size();
  Eigen::MatrixXd dist(n, n);

  if (algo == ShortestPathAlgo::dijkstra) {
    std::vector<std::vector<std::pair<int, double>>> adj(n);
    for (const auto& e : g.edges()) {
      adj[e.u].emplace_back(e.v, e.w);
      adj[e.v].emplace_back(e.u, e.w);
    }
    for (int s = 0; s < n; ++s) dijkstra_from(s, n, adj, dist);
  } else {
    dist.setConstant(std::numeric_limits<double>::infinity());
    for (int i = 0; i < n; ++i) dist(i, i) = 0.0;
    for (const auto& e : g.edges()) {
      dist(e.u, e.v) = std::min(dist(e.u, e.v), e.w);
      dist(e.v, e.u) = dist(e.u, e.v);
    }
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          const double through = dist(i, k) + dist(k, j);
          if (through < dist(i, j)) dist(i, j) = through;
        }
  }

  // Symmetrize away summation-order noise from the per-source runs.
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double d = std::min(dist(i, j), dist(j, i));
      dist(i, j) = d;
      dist(j, i) = d;
    }
  return FiniteMetricSpace(std::move(dist));
}

ProbabilityMeasure::ProbabilityMeasure(Eigen::VectorXd weights) : weights_(std::move(weights)) {
  if (weights_.size() == 0) throw InvalidMeasure("measure must have at least one weight");
  for (int i = 0; i < weights_.size(); ++i) {
    if (!(weights_(i) >= 0.0)) throw NegativeMass("measure weights must be nonnegative");
  }
  if (std::abs(weights_.sum() - 1.0) > 1e-9) {
    throw InvalidMeasure("measure weights must sum to one");
  }
}

ProbabilityMeasure ProbabilityMeasure::uniform(int n) {
  return ProbabilityMeasure(Eigen::VectorXd::Constant(n, 1.0 / n));
}

ProbabilityMeasure normalize_measure(const Eigen::VectorXd& raw) {
  if (raw.size() == 0) throw AllZeroMass("cannot normalize an empty mass vector");
  double total = 0.0;
  for (int i = 0; i < raw.size(); ++i) {
    if (raw(i) < 0.0) throw NegativeMass("mass vector has a negative entry");
    total += raw(i);
  }
  if (total <= 0.0) throw AllZeroMass("mass vector sums to zero");
  return ProbabilityMeasure(raw / total);
}

}  // namespace poa
