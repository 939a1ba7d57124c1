#include "poa/pipeline.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>

#include "poa/embedding.hpp"
#include "poa/extension.hpp"
#include "poa/io.hpp"
#include "poa/signals.hpp"
#include "poa/stability.hpp"

namespace poa {

namespace fs = std::filesystem;

Dataset load_dataset(const std::string& path, InputFormat format,
                     const std::optional<std::string>& measure_path, bool validate) {
  std::optional<WeightedGraph> graph;
  std::optional<FiniteMetricSpace> space;

  if (format == InputFormat::edge_list) {
    graph = io::read_edge_list(path);
    space = build_graph_metric(*graph);
  } else {
    Eigen::MatrixXd dist = io::read_distance_csv(path);
    if (validate) {
      const ValidationReport report = validate_metric(dist);
      if (!report.ok()) throw ValidationError("metric validation failed: " + report.summary());
    }
    space = FiniteMetricSpace(std::move(dist));
  }

  ProbabilityMeasure measure = ProbabilityMeasure::uniform(space->size());
  if (measure_path) {
    const Eigen::VectorXd raw = io::read_value_file(*measure_path);
    if (raw.size() != space->size()) {
      throw ValidationError("measure file length does not match the space");
    }
    measure = normalize_measure(raw);
  }
  return Dataset{std::move(*space), std::move(measure), std::move(graph)};
}

namespace {

std::string join(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

const WeightedGraph* graph_for_mode(const RunConfig& cfg, const Dataset& data) {
  if (cfg.solver.constraint_mode != ConstraintMode::edges) return nullptr;
  if (!data.graph) {
    throw ModeMismatch("edges mode requires an edge-list input (no graph available)");
  }
  return &*data.graph;
}

// Loads pos.csv when supplied, otherwise solves. Loaded observables are
// re-certified so hand-edited files cannot smuggle in non-observables.
PrincipalObservableSet obtain_pos(const RunConfig& cfg, const Dataset& data, int k) {
  if (cfg.po_csv_path) {
    const Eigen::MatrixXd columns = io::read_observables_csv(*cfg.po_csv_path);
    if (columns.rows() != data.space.size()) {
      throw ValidationError("observable CSV does not match the space size");
    }
    PrincipalObservableSet pos;
    for (int m = 0; m < columns.cols(); ++m) {
      Observable phi(columns.col(m));
      if (!certify(data.space, phi).certified) {
        throw UncertifiedObservable("loaded observable " + std::to_string(m + 1) +
                                    " is not 1-Lipschitz");
      }
      pos.variances.push_back(variance(data.measure, phi));
      pos.observables.push_back(std::move(phi));
      pos.diagnostics.push_back({});
    }
    return pos;
  }
  return solve_poa(data.space, data.measure, k, cfg.solver, graph_for_mode(cfg, data));
}

int run_poa(const RunConfig& cfg, const Dataset& data) {
  const PrincipalObservableSet pos = obtain_pos(cfg, data, cfg.k);
  if (pos.truncated) {
    std::cerr << "warning: only " << pos.count() << " principal observable(s) exist; requested "
              << cfg.k << "\n";
  }
  io::write_observables_csv(join(cfg.output_dir, "pos.csv"), pos);
  io::write_poa_report_json(join(cfg.output_dir, "poa_report.json"), pos);
  return kExitOk;
}

int run_embed(const RunConfig& cfg, const Dataset& data) {
  PrincipalObservableSet pos = obtain_pos(cfg, data, cfg.k);
  if (pos.count() == 0) throw DegenerateVariance("no principal observables exist", 0.0);
  const int k = std::min(cfg.k, pos.count());
  if (k < cfg.k) {
    std::cerr << "warning: embedding truncated to " << k << " coordinate(s)\n";
  }
  const Embedding embedding = embed(pos, k);
  io::write_observables_csv(join(cfg.output_dir, "pos.csv"), pos);
  io::write_poa_report_json(join(cfg.output_dir, "poa_report.json"), pos);
  io::write_embedding_csv(join(cfg.output_dir, "embedding.csv"), embedding);
  io::write_distortion_json(join(cfg.output_dir, "distortion.json"),
                            distortion_report(data.space, embedding), "poa_linf");
  if (cfg.emit_svg) io::write_svg_scatter(join(cfg.output_dir, "embedding.svg"), embedding);
  return kExitOk;
}

int run_mds(const RunConfig& cfg, const Dataset& data) {
  const Embedding embedding = classical_mds(data.space, cfg.k);
  io::write_embedding_csv(join(cfg.output_dir, "mds.csv"), embedding);
  io::write_distortion_json(join(cfg.output_dir, "mds_distortion.json"),
                            distortion_report(data.space, embedding), "mds_l2");
  if (cfg.emit_svg) io::write_svg_scatter(join(cfg.output_dir, "mds.svg"), embedding);
  return kExitOk;
}

int run_extend(const RunConfig& cfg, const Dataset& data) {
  if (!cfg.observable_path || !cfg.queries_path) {
    throw ValidationError("extend needs --obs (sample values) and --queries (distance rows)");
  }
  const Eigen::VectorXd values = io::read_value_file(*cfg.observable_path);
  if (values.size() != data.space.size()) {
    throw ValidationError("observable length does not match the sample space");
  }
  const Eigen::MatrixXd queries = io::read_csv_matrix(*cfg.queries_path);
  if (queries.cols() != data.space.size()) {
    throw ValidationError("query rows must have one distance per sample point");
  }
  const SampledObservable phi{values};

  std::ofstream out(join(cfg.output_dir, "extended.csv"));
  out << "lower,balanced,upper\n";
  for (int q = 0; q < queries.rows(); ++q) {
    const ExtensionValues v = extend_all(phi, queries.row(q).transpose());
    out << io::format_double(v.lower) << "," << io::format_double(v.balanced) << ","
        << io::format_double(v.upper) << "\n";
  }
  return kExitOk;
}

int run_signal_analyze(const RunConfig& cfg, const Dataset& data) {
  if (!cfg.signal_path) throw ValidationError("signal analyze needs --signal");
  const Eigen::VectorXd signal = io::read_value_file(*cfg.signal_path);
  if (signal.size() != data.space.size()) {
    throw ValidationError("signal length does not match the space");
  }
  const PrincipalObservableSet pos = obtain_pos(cfg, data, cfg.k);
  const ObservableBasis basis = orthonormalize(pos, data.measure);
  const ObservableSpectrum spectrum = analyze(signal, basis, data.measure);
  io::write_observables_csv(join(cfg.output_dir, "pos.csv"), pos);
  io::write_spectrum_csv(join(cfg.output_dir, "spectrum.csv"), spectrum);
  return kExitOk;
}

int run_signal_synthesize(const RunConfig& cfg, const Dataset& data) {
  if (!cfg.spectrum_path) throw ValidationError("signal synthesize needs --spectrum");
  ObservableSpectrum spectrum = io::read_spectrum_csv(*cfg.spectrum_path);
  const PrincipalObservableSet pos = obtain_pos(cfg, data, cfg.k);
  const ObservableBasis basis = orthonormalize(pos, data.measure);
  // --k caps the coefficients used (a_0..a_k).
  const int keep = std::min<int>(spectrum.size(), std::min(cfg.k + 1, basis.size()));
  spectrum.coefficients.conservativeResize(keep);
  io::write_value_file(join(cfg.output_dir, "signal.csv"), synthesize(spectrum, basis));
  return kExitOk;
}

int run_stability(const RunConfig& cfg, const Dataset& data) {
  if (!cfg.measure2_path) throw ValidationError("stability needs --measure2 (second measure)");
  const Eigen::VectorXd raw = io::read_value_file(*cfg.measure2_path);
  if (raw.size() != data.space.size()) {
    throw ValidationError("second measure length does not match the space");
  }
  const ProbabilityMeasure nu = normalize_measure(raw);

  PrincipalObservableSet pos;
  try {
    pos = solve_poa(data.space, data.measure, cfg.k, cfg.solver, graph_for_mode(cfg, data));
  } catch (const DegenerateVariance&) {
    // a space with no nontrivial observables still gets the generic family
  }
  const std::vector<Observable> family =
      default_audit_family(data.space, data.measure, &pos, 50, cfg.solver.seed);

  std::vector<std::pair<Observable, Observable>> pairs;
  const int f_count = std::min<int>(static_cast<int>(family.size()), 12);
  for (int i = 0; i < f_count; ++i)
    for (int j = i; j < f_count; ++j) pairs.emplace_back(family[i], family[j]);

  const MeanAuditReport mean_report = mean_stability_audit(data.space, data.measure, nu, family);
  const CovarianceAuditReport cov_report =
      covariance_stability_audit(data.space, data.measure, nu, pairs);
  io::write_stability_json(join(cfg.output_dir, "stability.json"), mean_report, cov_report);
  return (mean_report.pass && cov_report.pass) ? kExitOk : kExitAuditFail;
}

int run_distort(const RunConfig& cfg, const Dataset& data) {
  if (!cfg.other_input_path || !cfg.pairs_path) {
    throw ValidationError("distort needs --other (second space) and --pairs (correspondence)");
  }
  const Dataset other = load_dataset(*cfg.other_input_path, cfg.other_format, std::nullopt,
                                     cfg.validate);
  const Correspondence R = io::read_pair_list(*cfg.pairs_path);

  Eigen::VectorXd f_left = Eigen::VectorXd::Zero(data.space.size());
  Eigen::VectorXd f_right = Eigen::VectorXd::Zero(other.space.size());
  if (cfg.observable_path) f_left = io::read_value_file(*cfg.observable_path);
  if (cfg.observable2_path) f_right = io::read_value_file(*cfg.observable2_path);
  if (f_left.size() != data.space.size() || f_right.size() != other.space.size()) {
    throw ValidationError("distort: value tables must cover all indices");
  }

  const DistortionResult result = correspondence_distortion(
      R, data.space.matrix(), other.space.matrix(), f_left, f_right);
  io::write_distortion_result_json(join(cfg.output_dir, "distort.json"), result);
  return kExitOk;
}

}  // namespace

int run(const RunConfig& cfg) {
  try {
    fs::create_directories(cfg.output_dir);
    const Dataset data =
        load_dataset(cfg.input_path, cfg.format, cfg.measure_path, cfg.validate);
    switch (cfg.command) {
      case Command::poa:
        return run_poa(cfg, data);
      case Command::embed:
        return run_embed(cfg, data);
      case Command::mds:
        return run_mds(cfg, data);
      case Command::extend:
        return run_extend(cfg, data);
      case Command::signal_analyze:
        return run_signal_analyze(cfg, data);
      case Command::signal_synthesize:
        return run_signal_synthesize(cfg, data);
      case Command::stability:
        return run_stability(cfg, data);
      case Command::distort:
        return run_distort(cfg, data);
    }
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}

}  // namespace poa
