#include "poa/signals.hpp"

#include <cmath>

namespace poa {

ObservableBasis orthonormalize(const PrincipalObservableSet& pos, const ProbabilityMeasure& mu) {
  const int n = mu.size();
  for (const auto& phi : pos.observables) {
    if (phi.size() != n) throw LengthMismatch("orthonormalize: observable does not match measure");
  }
  ObservableBasis basis;
  basis.columns.resize(n, pos.count() + 1);
  basis.columns.col(0).setOnes();
  for (int m = 0; m < pos.count(); ++m) {
    const Eigen::VectorXd& phi = pos.observables[m].values;
    const double norm = std::sqrt((mu.weights().array() * phi.array().square()).sum());
    if (norm <= 1e-12) {
      throw ZeroNormObservable("orthonormalize: observable has zero mu-norm");
    }
    basis.columns.col(m + 1) = phi / norm;
  }
  return basis;
}

ObservableSpectrum analyze(const Eigen::VectorXd& signal, const ObservableBasis& basis,
                           const ProbabilityMeasure& mu) {
  if (signal.size() != basis.points() || mu.size() != basis.points()) {
    throw LengthMismatch("analyze: signal, basis and measure sizes must agree");
  }
  ObservableSpectrum spectrum;
  spectrum.coefficients = basis.columns.transpose() * mu.weights().cwiseProduct(signal);
  return spectrum;
}

Eigen::VectorXd synthesize(const ObservableSpectrum& spectrum, const ObservableBasis& basis) {
  if (spectrum.size() > basis.size()) {
    throw SizeMismatch("synthesize: spectrum longer than basis");
  }
  return basis.columns.leftCols(spectrum.size()) * spectrum.coefficients;
}

int sign_changes(const Eigen::VectorXd& values, double zero_tol) {
  int changes = 0;
  int last_sign = 0;
  for (int i = 0; i < values.size(); ++i) {
    const double v = values(i);
    const int sign = v > zero_tol ? 1 : (v < -zero_tol ? -1 : 0);
    if (sign == 0) continue;
    if (last_sign != 0 && sign != last_sign) ++changes;
    last_sign = sign;
  }
  return changes;
}

}  // namespace poa
