#pragma once

#include <Eigen/Dense>

#include "poa/mmspace.hpp"
#include "poa/poa_solver.hpp"

namespace poa {

// mu-orthonormal basis: column 0 is the constant function 1, column i > 0 is
// phi_i / ||phi_i||_{2,mu}.
struct ObservableBasis {
  Eigen::MatrixXd columns;  // n x (k+1)

  int points() const { return static_cast<int>(columns.rows()); }
  int size() const { return static_cast<int>(columns.cols()); }
};

// Coefficients a_0..a_k of a signal in the basis; a_0 vanishes exactly for
// mu-centered signals.
struct ObservableSpectrum {
  Eigen::VectorXd coefficients;

  int size() const { return static_cast<int>(coefficients.size()); }
};

ObservableBasis orthonormalize(const PrincipalObservableSet& pos, const ProbabilityMeasure& mu);

/// a_i = <f, u_i>_mu.
ObservableSpectrum analyze(const Eigen::VectorXd& signal, const ObservableBasis& basis,
                           const ProbabilityMeasure& mu);

/// f_k = sum a_i u_i; the spectrum may be shorter than the basis.
Eigen::VectorXd synthesize(const ObservableSpectrum& spectrum, const ObservableBasis& basis);

/// Sign changes along the index order, ignoring entries within `zero_tol` of
/// zero. Used for the oscillation diagnostics of line-graph bases.
int sign_changes(const Eigen::VectorXd& values, double zero_tol = 1e-9);

}  // namespace poa
