#pragma once

#include <string>

#include <Eigen/Dense>

#include "poa/embedding.hpp"
#include "poa/mmspace.hpp"
#include "poa/poa_solver.hpp"
#include "poa/signals.hpp"
#include "poa/stability.hpp"

namespace poa::io {

/// %.17g rendering used everywhere so identical runs emit identical bytes.
std::string format_double(double value);

// --- readers ---

/// Edge list: one "i j w" triple per line, 0-based indices, '#' comments.
WeightedGraph read_edge_list(const std::string& path);

/// Square comma-separated matrix, no header.
Eigen::MatrixXd read_distance_csv(const std::string& path);

/// One value per line ('#' comments allowed). Measures, observables, signals.
Eigen::VectorXd read_value_file(const std::string& path);

/// Rectangular comma-separated matrix, no header (query distance tables).
Eigen::MatrixXd read_csv_matrix(const std::string& path);

/// One "i j" pair per line.
Correspondence read_pair_list(const std::string& path);

/// Reads a pos.csv written by write_observables_csv (header + columns).
/// Values only; variances and certificates are the caller's business.
Eigen::MatrixXd read_observables_csv(const std::string& path);

/// Reads a spectrum.csv written by write_spectrum_csv.
ObservableSpectrum read_spectrum_csv(const std::string& path);

// --- writers ---

void write_value_file(const std::string& path, const Eigen::VectorXd& values);

/// Header po1,po2,... then one row per point.
void write_observables_csv(const std::string& path, const PrincipalObservableSet& pos);

/// Header x1..xk then one row per point.
void write_embedding_csv(const std::string& path, const Embedding& embedding);

/// Header "index,coefficient".
void write_spectrum_csv(const std::string& path, const ObservableSpectrum& spectrum);

void write_poa_report_json(const std::string& path, const PrincipalObservableSet& pos);

void write_distortion_json(const std::string& path, const DistortionReport& report,
                           const std::string& label);

/// Two embeddings juxtaposed (the POA-vs-MDS comparison artifact).
void write_comparison_json(const std::string& path, const DistortionReport& poa_report,
                           const DistortionReport& mds_report);

void write_stability_json(const std::string& path, const MeanAuditReport& mean_report,
                          const CovarianceAuditReport& covariance_report);

void write_distortion_result_json(const std::string& path, const DistortionResult& result);

/// Static scatter of the first 2 coordinates; a third coordinate, when
/// present, is rendered as the fill color.
void write_svg_scatter(const std::string& path, const Embedding& embedding);

}  // namespace poa::io
