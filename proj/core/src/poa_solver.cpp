#include "poa/poa_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "poa/simplex.hpp"

namespace poa {

namespace {

constexpr double kPairFeasTol = 1e-9;
constexpr double kEqualityTol = 1e-10;
constexpr double kOrthogonalityTol = 1e-7;

// Portable N(0,1) draws: Box-Muller on top of raw 64-bit output, so results
// do not depend on the standard library's distribution internals.
class GaussianSource {
public:
  explicit GaussianSource(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    engine_.seed(seq);
  }

  double uniform() { return (engine_() >> 11) * 0x1.0p-53; }

  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * M_PI * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

Eigen::VectorXd random_unit_direction(int n, std::uint64_t seed, std::uint64_t stream) {
  GaussianSource source(seed, stream);
  Eigen::VectorXd u(n);
  double norm = 0.0;
  do {
    for (int i = 0; i < n; ++i) u(i) = source.gaussian();
    norm = u.norm();
  } while (norm < 1e-12);
  return u / norm;
}

void require_valid_priors(const ProbabilityMeasure& mu, const std::vector<Observable>& priors) {
  for (const auto& prior : priors) {
    if (!prior.certified) {
      throw UncertifiedObservable("polytope priors must be certified 1-Lipschitz");
    }
    const double m = mu.weights().dot(prior.values);
    if (std::abs(m) > kLipschitzTol) {
      throw NotCentered("polytope priors must be centered", m);
    }
  }
}

}  // namespace

double LipschitzPolytope::max_pair_violation(const Eigen::VectorXd& f) const {
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& p : pairs) {
    worst = std::max(worst, std::abs(f(p.i) - f(p.j)) - p.bound);
  }
  return pairs.empty() ? 0.0 : worst;
}

double LipschitzPolytope::max_equality_residual(const Eigen::VectorXd& f) const {
  double worst = 0.0;
  for (const auto& row : equality_rows) worst = std::max(worst, std::abs(row.dot(f)));
  return worst;
}

LipschitzPolytope build_polytope(const FiniteMetricSpace& space, const ProbabilityMeasure& mu,
                                 const std::vector<Observable>& priors, ConstraintMode mode,
                                 const WeightedGraph* graph) {
  const int n = space.size();
  if (mu.size() != n) throw LengthMismatch("build_polytope: measure does not match space");
  for (const auto& prior : priors) {
    if (prior.size() != n) throw LengthMismatch("build_polytope: prior does not match space");
  }
  require_valid_priors(mu, priors);

  LipschitzPolytope polytope;
  polytope.n = n;
  if (mode == ConstraintMode::pairwise) {
    polytope.pairs.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) polytope.pairs.push_back({i, j, space.dist(i, j)});
  } else {
    if (graph == nullptr) throw ModeMismatch("build_polytope: edges mode requires the source graph");
    if (graph->size() != n) throw ModeMismatch("build_polytope: graph size does not match space");
    polytope.pairs.reserve(graph->edges().size());
    for (const auto& e : graph->edges()) polytope.pairs.push_back({e.u, e.v, space.dist(e.u, e.v)});
  }

  polytope.equality_rows.push_back(mu.weights());
  for (const auto& prior : priors) {
    polytope.equality_rows.push_back(mu.weights().cwiseProduct(prior.values));
  }
  return polytope;
}

Eigen::VectorXd lp_maximize(const Eigen::VectorXd& c, const LipschitzPolytope& polytope) {
  const int n = polytope.n;
  if (c.size() != n) throw LengthMismatch("lp_maximize: objective length does not match polytope");
  if (c.lpNorm<Eigen::Infinity>() == 0.0) return Eigen::VectorXd::Zero(n);

  const int n_pairs = polytope.inequality_pair_count();
  const int n_eq = polytope.equality_count();
  const int n_cols = 2 * n_pairs + 2 * n_eq;

  // Dual of (max c.f : |f_i - f_j| <= b, E f = 0):
  //   min b.y  s.t.  A^T y + E^T lambda = c,  y >= 0, lambda free.
  // In standard max form the optimal primal point is the negated vector of
  // row multipliers.
  StandardLp dual;
  dual.M = Eigen::MatrixXd::Zero(n, n_cols);
  dual.c = Eigen::VectorXd::Zero(n_cols);
  dual.r = c;
  for (int k = 0; k < n_pairs; ++k) {
    const auto& p = polytope.pairs[k];
    dual.M(p.i, 2 * k) = 1.0;
    dual.M(p.j, 2 * k) = -1.0;
    dual.M(p.i, 2 * k + 1) = -1.0;
    dual.M(p.j, 2 * k + 1) = 1.0;
    dual.c(2 * k) = -p.bound;
    dual.c(2 * k + 1) = -p.bound;
  }
  for (int t = 0; t < n_eq; ++t) {
    dual.M.col(2 * n_pairs + t) = polytope.equality_rows[t];
    dual.M.col(2 * n_pairs + n_eq + t) = -polytope.equality_rows[t];
  }

  const StandardLpSolution sol = simplex_solve(dual);
  if (sol.status == LpStatus::infeasible) {
    throw LpUnbounded("lp_maximize: polytope is unbounded (missing centering row?)");
  }
  if (sol.status == LpStatus::unbounded) {
    throw LpInfeasible("lp_maximize: polytope is empty (inconsistent equality rows?)");
  }

  Eigen::VectorXd f = -sol.row_multipliers;

  // Scrub equality drift: project onto the intersection of the hyperplanes.
  if (n_eq > 0 && polytope.max_equality_residual(f) > 1e-13) {
    Eigen::MatrixXd E(n_eq, n);
    for (int t = 0; t < n_eq; ++t) E.row(t) = polytope.equality_rows[t].transpose();
    const Eigen::VectorXd residual = E * f;
    f -= E.transpose() * (E * E.transpose()).ldlt().solve(residual);
  }

  if (polytope.max_pair_violation(f) > kPairFeasTol ||
      polytope.max_equality_residual(f) > kEqualityTol) {
    throw InternalSolverError("lp_maximize: recovered point violates feasibility tolerances");
  }
  const double primal_value = c.dot(f);
  const double dual_value = -sol.objective;
  if (std::abs(primal_value - dual_value) > 1e-6 * std::max(1.0, std::abs(dual_value))) {
    throw InternalSolverError("lp_maximize: duality gap exceeds tolerance");
  }
  return f;
}

void SolverConfig::validate() const {
  if (restarts < 1) throw Error("SolverConfig: restarts must be >= 1");
  if (max_ccp_iters < 1) throw Error("SolverConfig: max_ccp_iters must be >= 1");
  if (!(rel_improvement_tol > 0.0)) throw Error("SolverConfig: rel_improvement_tol must be > 0");
  if (!(variance_floor > 0.0)) throw Error("SolverConfig: variance_floor must be > 0");
}

void sign_normalize(Eigen::VectorXd& f) {
  int pivot = -1;
  double best = 0.0;
  for (int i = 0; i < f.size(); ++i) {
    const double a = std::abs(f(i));
    if (a > best + 1e-15) {
      best = a;
      pivot = i;
    }
  }
  if (pivot >= 0 && f(pivot) < 0.0) f = -f;
}

namespace {

int barycenter_point(const FiniteMetricSpace& space, const ProbabilityMeasure& mu) {
  int best = 0;
  double best_cost = std::numeric_limits<double>::infinity();
  for (int i = 0; i < space.size(); ++i) {
    double cost = 0.0;
    for (int j = 0; j < space.size(); ++j) {
      cost += mu[j] * space.dist(i, j) * space.dist(i, j);
    }
    if (cost < best_cost) {
      best_cost = cost;
      best = i;
    }
  }
  return best;
}

struct CcpRun {
  Eigen::VectorXd point;
  double variance = -1.0;
  int iterations = 0;
};

// Iterates f <- argmax <2 mu.f, .> until the variance stops improving. The
// variance is nondecreasing across feasible iterates because the objective
// is convex and each LP step maximizes its linearization.
CcpRun run_ccp(const Eigen::VectorXd& start_gradient, const LipschitzPolytope& polytope,
               const ProbabilityMeasure& mu, const SolverConfig& cfg) {
  CcpRun run;
  Eigen::VectorXd v = lp_maximize(start_gradient, polytope);
  double var = variance(mu, Observable(v));
  for (int t = 0; t < cfg.max_ccp_iters; ++t) {
    const Eigen::VectorXd gradient = 2.0 * mu.weights().cwiseProduct(v);
    Eigen::VectorXd next = lp_maximize(gradient, polytope);
    const double next_var = variance(mu, Observable(next));
    ++run.iterations;
    if (next_var < var - 1e-8 * std::max(1.0, var)) {
      throw InternalSolverError("CCP variance decreased across an iteration");
    }
    const bool converged = (next_var - var) <= cfg.rel_improvement_tol *
                                                   std::max(next_var, cfg.variance_floor);
    v = std::move(next);
    var = next_var;
    if (converged) break;
  }
  run.point = std::move(v);
  run.variance = var;
  return run;
}

}  // namespace

PrincipalObservable solve_principal_observable(const FiniteMetricSpace& space,
                                               const ProbabilityMeasure& mu,
                                               const std::vector<Observable>& priors,
                                               const SolverConfig& cfg,
                                               const WeightedGraph* graph) {
  cfg.validate();
  const LipschitzPolytope polytope =
      build_polytope(space, mu, priors, cfg.constraint_mode, graph);
  const int n = space.size();

  CcpRun best;
  int best_index = -1;
  for (int s = 0; s < cfg.restarts; ++s) {
    Eigen::VectorXd start_gradient;
    if (s == 0) {
      // Deterministic start: the centered distance observable of the point
      // minimizing the mu-weighted squared distances.
      const int b = barycenter_point(space, mu);
      Eigen::VectorXd f0 = space.matrix().col(b);
      f0.array() -= mu.weights().dot(f0);
      start_gradient = 2.0 * mu.weights().cwiseProduct(f0);
    } else {
      start_gradient = random_unit_direction(n, cfg.seed, static_cast<std::uint64_t>(s));
    }
    CcpRun run = run_ccp(start_gradient, polytope, mu, cfg);
    if (run.variance > best.variance) {
      best = std::move(run);
      best_index = s;
    }
  }

  if (best.variance < cfg.variance_floor) {
    throw DegenerateVariance("no principal observable of nontrivial variance remains",
                             best.variance);
  }

  Eigen::VectorXd f = best.point;
  f.array() -= mu.weights().dot(f);  // scrub solver drift
  sign_normalize(f);

  Observable out(std::move(f));
  const CertReport cert = certify(space, out, LipschitzCheckMode::pairwise);
  if (!cert.certified) {
    throw InternalSolverError("solver output failed pairwise Lipschitz certification");
  }
  for (const auto& prior : priors) {
    const double dot = (mu.weights().array() * out.values.array() * prior.values.array()).sum();
    if (std::abs(dot) > kOrthogonalityTol) {
      throw InternalSolverError("solver output violates orthogonality tolerance");
    }
  }

  PrincipalObservable result;
  result.variance = variance(mu, out);
  result.phi = std::move(out);
  result.diagnostics = {best.iterations, cfg.restarts, best_index};
  return result;
}

PrincipalObservableSet solve_poa(const FiniteMetricSpace& space, const ProbabilityMeasure& mu,
                                 int k, const SolverConfig& cfg, const WeightedGraph* graph) {
  if (k < 1) throw Error("solve_poa: k must be >= 1");
  PrincipalObservableSet set;
  for (int stage = 0; stage < k; ++stage) {
    try {
      PrincipalObservable po =
          solve_principal_observable(space, mu, set.observables, cfg, graph);
      set.observables.push_back(std::move(po.phi));
      set.variances.push_back(po.variance);
      set.diagnostics.push_back(po.diagnostics);
    } catch (const DegenerateVariance&) {
      set.truncated = true;
      break;
    }
  }
  return set;
}

BruteForceResult brute_force_po(const FiniteMetricSpace& space, const ProbabilityMeasure& mu,
                                const std::vector<Observable>& priors) {
  const int n = space.size();
  if (n > 6) throw TooLarge("brute_force_po supports n <= 6 only");
  const LipschitzPolytope polytope =
      build_polytope(space, mu, priors, ConstraintMode::pairwise, nullptr);

  const int n_eq = polytope.equality_count();
  Eigen::MatrixXd E(n_eq, n);
  for (int t = 0; t < n_eq; ++t) E.row(t) = polytope.equality_rows[t].transpose();
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> eq_qr(E);
  eq_qr.setThreshold(1e-10);
  const int eq_rank = static_cast<int>(eq_qr.rank());
  const int active_needed = std::max(0, n - eq_rank);

  const int n_pairs = polytope.inequality_pair_count();
  BruteForceResult best;
  best.phi = Observable(Eigen::VectorXd::Zero(n));
  best.variance = 0.0;

  auto consider = [&](const Eigen::VectorXd& f) {
    if (polytope.max_pair_violation(f) > 1e-9) return;
    if (polytope.max_equality_residual(f) > 1e-8) return;
    const double var = variance(mu, Observable(f));
    if (var > best.variance) {
      best.variance = var;
      best.phi.values = f;
    }
  };

  if (active_needed == 0) {
    // Equalities already pin a unique point (generically the origin).
    consider(Eigen::VectorXd::Zero(n));
  } else if (active_needed <= n_pairs) {
    std::vector<int> combo(active_needed);
    std::iota(combo.begin(), combo.end(), 0);
    const int rows = n_eq + active_needed;
    Eigen::MatrixXd system(rows, n);
    Eigen::VectorXd rhs(rows);
    system.topRows(n_eq) = E;
    rhs.head(n_eq).setZero();

    while (true) {
      for (std::uint32_t signs = 0; signs < (1u << active_needed); ++signs) {
        for (int a = 0; a < active_needed; ++a) {
          const auto& p = polytope.pairs[combo[a]];
          Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(n);
          row(p.i) = 1.0;
          row(p.j) = -1.0;
          system.row(n_eq + a) = row;
          rhs(n_eq + a) = ((signs >> a) & 1u) ? p.bound : -p.bound;
        }
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(system);
        qr.setThreshold(1e-10);
        if (qr.rank() < n) continue;
        const Eigen::VectorXd f = qr.solve(rhs);
        if ((system * f - rhs).lpNorm<Eigen::Infinity>() > 1e-8) continue;  // inconsistent
        consider(f);
      }
      // next combination
      int pos = active_needed - 1;
      while (pos >= 0 && combo[pos] == n_pairs - active_needed + pos) --pos;
      if (pos < 0) break;
      ++combo[pos];
      for (int q = pos + 1; q < active_needed; ++q) combo[q] = combo[q - 1] + 1;
    }
  }

  Eigen::VectorXd f = best.phi.values;
  f.array() -= mu.weights().dot(f);
  sign_normalize(f);
  best.phi = Observable(std::move(f));
  certify(space, best.phi, LipschitzCheckMode::pairwise);
  best.variance = variance(mu, best.phi);
  return best;
}

}  // namespace poa
