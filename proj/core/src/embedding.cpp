#include "poa/embedding.hpp"

#include <algorithm>
#include <cmath>

namespace poa {

double Embedding::row_distance(int i, int j) const {
  const Eigen::RowVectorXd diff = coords.row(i) - coords.row(j);
  return norm_tag == NormTag::linf ? diff.lpNorm<Eigen::Infinity>() : diff.norm();
}

Embedding embed(const PrincipalObservableSet& pos, int k) {
  if (k < 1 || k > pos.count()) {
    throw NotEnoughObservables("embed: need 1 <= k <= number of principal observables");
  }
  const int n = pos.observables.front().size();
  Embedding embedding;
  embedding.coords.resize(n, k);
  for (int m = 0; m < k; ++m) embedding.coords.col(m) = pos.observables[m].values;
  embedding.norm_tag = NormTag::linf;
  return embedding;
}

DistortionReport distortion_report(const FiniteMetricSpace& space, const Embedding& embedding,
                                   int bins) {
  if (embedding.points() != space.size()) {
    throw SizeMismatch("distortion_report: embedding and space sizes differ");
  }
  if (bins < 1) throw SizeMismatch("distortion_report: bin count must be >= 1");

  const int n = space.size();
  DistortionReport report;
  report.deltas.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      report.deltas.push_back(std::abs(space.dist(i, j) - embedding.row_distance(i, j)));
    }
  }

  double log_max = 0.0;
  double sum = 0.0;
  long below = 0;
  for (double d : report.deltas) {
    log_max = std::max(log_max, std::log1p(d));
    report.max = std::max(report.max, d);
    sum += d;
    if (d < 0.1) ++below;
  }

  report.counts.assign(bins, 0);
  report.bin_width = log_max > 0.0 ? log_max / bins : 0.0;
  for (double d : report.deltas) {
    int bin = 0;
    if (report.bin_width > 0.0) {
      bin = std::min(bins - 1, static_cast<int>(std::log1p(d) / report.bin_width));
    }
    ++report.counts[bin];
  }

  if (!report.deltas.empty()) {
    report.mean = sum / static_cast<double>(report.deltas.size());
    std::vector<double> sorted = report.deltas;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t mid = sorted.size() / 2;
    report.median =
        sorted.size() % 2 == 1 ? sorted[mid] : 0.5 * (sorted[mid - 1] + sorted[mid]);
    report.fraction_below_0_1 = static_cast<double>(below) / static_cast<double>(sorted.size());
  }
  return report;
}

Embedding classical_mds(const FiniteMetricSpace& space, int k) {
  const int n = space.size();
  if (k < 1 || k > n - 1) throw SizeMismatch("classical_mds: need 1 <= k <= n-1");

  const Eigen::MatrixXd squared = space.matrix().array().square();
  const Eigen::MatrixXd centering =
      Eigen::MatrixXd::Identity(n, n) - Eigen::MatrixXd::Constant(n, n, 1.0 / n);
  const Eigen::MatrixXd gram = -0.5 * centering * squared * centering;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eigen(gram);
  // Eigen returns ascending order; take the top k, clamping negatives to a
  // zero contribution.
  Embedding embedding;
  embedding.coords = Eigen::MatrixXd::Zero(n, k);
  embedding.norm_tag = NormTag::l2;
  for (int m = 0; m < k; ++m) {
    const int idx = n - 1 - m;
    const double value = eigen.eigenvalues()(idx);
    if (value <= 0.0) continue;
    Eigen::VectorXd column = eigen.eigenvectors().col(idx) * std::sqrt(value);
    sign_normalize(column);
    embedding.coords.col(m) = column;
  }
  return embedding;
}

}  // namespace poa
