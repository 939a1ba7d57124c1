#pragma once

#include <Eigen/Dense>

#include "poa/mmspace.hpp"
#include "poa/poa_solver.hpp"

namespace poa {

enum class NormTag { linf, l2 };

// Point coordinates in R^k. POA embeddings carry the L-infinity metric (the
// map is then 1-Lipschitz); MDS embeddings carry L2.
struct Embedding {
  Eigen::MatrixXd coords;  // n x k
  NormTag norm_tag = NormTag::linf;

  int points() const { return static_cast<int>(coords.rows()); }
  int dimension() const { return static_cast<int>(coords.cols()); }
  double row_distance(int i, int j) const;
};

struct DistortionReport {
  std::vector<double> deltas;      // per pair i<j, row-major order
  std::vector<long> counts;        // histogram of ln(1+delta)
  double bin_width = 0.0;          // over [0, max ln(1+delta)]
  double mean = 0.0;
  double median = 0.0;
  double max = 0.0;
  double fraction_below_0_1 = 0.0;  // fraction of pairs with delta < 0.1
};

/// First k principal observables as coordinates.
Embedding embed(const PrincipalObservableSet& pos, int k);

/// Per-pair |d(i,j) - ||row_i - row_j||| under the embedding's norm, with a
/// histogram of ln(1+delta).
DistortionReport distortion_report(const FiniteMetricSpace& space, const Embedding& embedding,
                                   int bins = 30);

/// Classical MDS: double-center the squared distances, keep the top-k
/// nonnegative eigenpairs, scale eigenvectors by sqrt(eigenvalue).
Embedding classical_mds(const FiniteMetricSpace& space, int k);

}  // namespace poa
