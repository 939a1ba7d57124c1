#include "poa/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

namespace poa::io {

namespace {

using nlohmann::json;

std::ifstream open_for_read(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path, 0);
  return in;
}

std::ofstream open_for_write(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write file: " + path);
  return out;
}

bool is_blank_or_comment(const std::string& line) {
  for (char c : line) {
    if (c == '#') return true;
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

double parse_number(const std::string& token, int line_no) {
  try {
    std::size_t consumed = 0;
    const double value = std::stod(token, &consumed);
    if (consumed != token.size()) throw std::invalid_argument(token);
    return value;
  } catch (const std::exception&) {
    throw ParseError("invalid number '" + token + "' at line " + std::to_string(line_no), line_no);
  }
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, ',')) out.push_back(field);
  return out;
}

}  // namespace

std::string format_double(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

WeightedGraph read_edge_list(const std::string& path) {
  auto in = open_for_read(path);
  std::vector<WeightedEdge> edges;
  int max_index = -1;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank_or_comment(line)) continue;
    std::istringstream is(line);
    std::string a, b, w;
    if (!(is >> a >> b >> w)) {
      throw ParseError("expected 'i j w' at line " + std::to_string(line_no), line_no);
    }
    std::string extra;
    if (is >> extra) {
      throw ParseError("trailing tokens at line " + std::to_string(line_no), line_no);
    }
    const double ua = parse_number(a, line_no);
    const double vb = parse_number(b, line_no);
    const double weight = parse_number(w, line_no);
    if (ua != std::floor(ua) || vb != std::floor(vb) || ua < 0 || vb < 0) {
      throw ParseError("node indices must be nonnegative integers at line " +
                           std::to_string(line_no),
                       line_no);
    }
    const int u = static_cast<int>(ua);
    const int v = static_cast<int>(vb);
    edges.push_back({u, v, weight});
    max_index = std::max({max_index, u, v});
  }
  if (edges.empty()) throw ParseError("edge list is empty: " + path, 0);
  return WeightedGraph(max_index + 1, std::move(edges));
}

Eigen::MatrixXd read_csv_matrix(const std::string& path) {
  auto in = open_for_read(path);
  std::vector<std::vector<double>> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank_or_comment(line)) continue;
    std::vector<double> row;
    for (const auto& field : split_csv(line)) row.push_back(parse_number(field, line_no));
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw ParseError("ragged row at line " + std::to_string(line_no), line_no);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("matrix file is empty: " + path, 0);
  Eigen::MatrixXd m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows.front().size(); ++j) m(i, j) = rows[i][j];
  return m;
}

Eigen::MatrixXd read_distance_csv(const std::string& path) {
  Eigen::MatrixXd m = read_csv_matrix(path);
  if (m.rows() != m.cols()) {
    throw ParseError("distance matrix must be square: " + path, 0);
  }
  return m;
}

Eigen::VectorXd read_value_file(const std::string& path) {
  auto in = open_for_read(path);
  std::vector<double> values;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank_or_comment(line)) continue;
    std::istringstream is(line);
    std::string token;
    is >> token;
    std::string extra;
    if (is >> extra) throw ParseError("one value per line at line " + std::to_string(line_no), line_no);
    values.push_back(parse_number(token, line_no));
  }
  if (values.empty()) throw ParseError("value file is empty: " + path, 0);
  return Eigen::Map<Eigen::VectorXd>(values.data(), values.size());
}

Correspondence read_pair_list(const std::string& path) {
  auto in = open_for_read(path);
  Correspondence R;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank_or_comment(line)) continue;
    std::istringstream is(line);
    std::string a, b;
    if (!(is >> a >> b)) throw ParseError("expected 'i j' at line " + std::to_string(line_no), line_no);
    R.pairs.emplace_back(static_cast<int>(parse_number(a, line_no)),
                         static_cast<int>(parse_number(b, line_no)));
  }
  return R;
}

Eigen::MatrixXd read_observables_csv(const std::string& path) {
  auto in = open_for_read(path);
  std::string header;
  if (!std::getline(in, header) || header.rfind("po1", 0) != 0) {
    throw ParseError("expected a po1,po2,... header in " + path, 1);
  }
  std::vector<std::vector<double>> rows;
  std::string line;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank_or_comment(line)) continue;
    std::vector<double> row;
    for (const auto& field : split_csv(line)) row.push_back(parse_number(field, line_no));
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw ParseError("ragged row at line " + std::to_string(line_no), line_no);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("observable CSV has no rows: " + path, 0);
  Eigen::MatrixXd m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows.front().size(); ++j) m(i, j) = rows[i][j];
  return m;
}

ObservableSpectrum read_spectrum_csv(const std::string& path) {
  auto in = open_for_read(path);
  std::string header;
  if (!std::getline(in, header) || header.rfind("index,", 0) != 0) {
    throw ParseError("expected an index,coefficient header in " + path, 1);
  }
  std::vector<double> coeffs;
  std::string line;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank_or_comment(line)) continue;
    const auto fields = split_csv(line);
    if (fields.size() != 2) throw ParseError("expected index,coefficient at line " +
                                                 std::to_string(line_no),
                                             line_no);
    coeffs.push_back(parse_number(fields[1], line_no));
  }
  ObservableSpectrum spectrum;
  spectrum.coefficients = Eigen::Map<Eigen::VectorXd>(coeffs.data(), coeffs.size());
  return spectrum;
}

void write_value_file(const std::string& path, const Eigen::VectorXd& values) {
  auto out = open_for_write(path);
  for (int i = 0; i < values.size(); ++i) out << format_double(values(i)) << "\n";
}

void write_observables_csv(const std::string& path, const PrincipalObservableSet& pos) {
  auto out = open_for_write(path);
  for (int m = 0; m < pos.count(); ++m) out << (m ? "," : "") << "po" << (m + 1);
  out << "\n";
  if (pos.count() == 0) return;
  const int n = pos.observables.front().size();
  for (int i = 0; i < n; ++i) {
    for (int m = 0; m < pos.count(); ++m) {
      out << (m ? "," : "") << format_double(pos.observables[m].values(i));
    }
    out << "\n";
  }
}

void write_embedding_csv(const std::string& path, const Embedding& embedding) {
  auto out = open_for_write(path);
  for (int m = 0; m < embedding.dimension(); ++m) out << (m ? "," : "") << "x" << (m + 1);
  out << "\n";
  for (int i = 0; i < embedding.points(); ++i) {
    for (int m = 0; m < embedding.dimension(); ++m) {
      out << (m ? "," : "") << format_double(embedding.coords(i, m));
    }
    out << "\n";
  }
}

void write_spectrum_csv(const std::string& path, const ObservableSpectrum& spectrum) {
  auto out = open_for_write(path);
  out << "index,coefficient\n";
  for (int i = 0; i < spectrum.size(); ++i) {
    out << i << "," << format_double(spectrum.coefficients(i)) << "\n";
  }
}

namespace {

json distortion_to_json(const DistortionReport& report, const std::string& label) {
  json j;
  j["label"] = label;
  j["bins"] = report.counts.size();
  j["bin_width"] = report.bin_width;
  j["counts"] = report.counts;
  j["summary"] = {{"mean", report.mean},
                  {"median", report.median},
                  {"max", report.max},
                  {"fraction_below_0.1", report.fraction_below_0_1}};
  j["pairs"] = report.deltas.size();
  return j;
}

void dump(const std::string& path, const json& j) {
  auto out = open_for_write(path);
  out << j.dump(2) << "\n";
}

}  // namespace

void write_poa_report_json(const std::string& path, const PrincipalObservableSet& pos) {
  json j;
  j["schema"] = 1;
  j["observables"] = pos.count();
  j["variances"] = pos.variances;
  j["truncated"] = pos.truncated;
  json diag = json::array();
  for (const auto& d : pos.diagnostics) {
    diag.push_back({{"iterations", d.iterations},
                    {"restarts_used", d.restarts_used},
                    {"best_restart", d.best_restart}});
  }
  j["diagnostics"] = diag;
  dump(path, j);
}

void write_distortion_json(const std::string& path, const DistortionReport& report,
                           const std::string& label) {
  json j = distortion_to_json(report, label);
  j["schema"] = 1;
  dump(path, j);
}

void write_comparison_json(const std::string& path, const DistortionReport& poa_report,
                           const DistortionReport& mds_report) {
  // The two histograms use different norms (L-inf for POA, L2 for MDS), so
  // they are labeled rather than merged.
  json j;
  j["schema"] = 1;
  j["poa_linf"] = distortion_to_json(poa_report, "poa_linf");
  j["mds_l2"] = distortion_to_json(mds_report, "mds_l2");
  dump(path, j);
}

void write_stability_json(const std::string& path, const MeanAuditReport& mean_report,
                          const CovarianceAuditReport& covariance_report) {
  json j;
  j["schema"] = 1;
  j["w1"] = mean_report.w1;
  j["mean_audit"] = {{"max_gap", mean_report.max_gap},
                     {"bound", mean_report.bound},
                     {"argmax_index", mean_report.argmax_index},
                     {"family_size", mean_report.family_size},
                     {"pass", mean_report.pass}};
  j["covariance_audit"] = {{"epsilon", covariance_report.epsilon},
                           {"max_sup_gap", covariance_report.max_sup_gap},
                           {"sup_bound", covariance_report.sup_bound},
                           {"max_cov_gap", covariance_report.max_cov_gap},
                           {"cov_bound", covariance_report.cov_bound},
                           {"pairs", covariance_report.pair_count},
                           {"pass", covariance_report.pass}};
  j["pass"] = mean_report.pass && covariance_report.pass;
  j["tolerance"] = 1e-8;
  dump(path, j);
}

void write_distortion_result_json(const std::string& path, const DistortionResult& result) {
  json j;
  j["schema"] = 1;
  j["dis"] = result.dis;
  j["fdis"] = result.fdis;
  j["gh_score"] = result.gh_score;
  dump(path, j);
}

void write_svg_scatter(const std::string& path, const Embedding& embedding) {
  const int n = embedding.points();
  const int k = embedding.dimension();
  const double width = 640.0, height = 640.0, margin = 40.0;

  auto column_range = [&](int col) {
    double lo = 0.0, hi = 1.0;
    if (col < k) {
      lo = embedding.coords.col(col).minCoeff();
      hi = embedding.coords.col(col).maxCoeff();
    }
    if (hi - lo < 1e-12) hi = lo + 1.0;
    return std::pair<double, double>(lo, hi);
  };
  const auto [x_lo, x_hi] = column_range(0);
  const auto [y_lo, y_hi] = column_range(1);
  const auto [c_lo, c_hi] = column_range(2);

  auto out = open_for_write(path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (int i = 0; i < n; ++i) {
    const double x = embedding.coords(i, 0);
    const double y = k > 1 ? embedding.coords(i, 1) : 0.0;
    const double px = margin + (x - x_lo) / (x_hi - x_lo) * (width - 2 * margin);
    const double py = height - margin - (y - y_lo) / (y_hi - y_lo) * (height - 2 * margin);
    int red = 31, blue = 180;
    if (k > 2) {
      const double t = (embedding.coords(i, 2) - c_lo) / (c_hi - c_lo);
      red = static_cast<int>(31 + t * (214 - 31));
      blue = static_cast<int>(180 - t * (180 - 39));
    }
    out << "<circle cx=\"" << format_double(px) << "\" cy=\"" << format_double(py)
        << "\" r=\"3\" fill=\"rgb(" << red << ",119," << blue << ")\"/>\n";
  }
  out << "</svg>\n";
}

}  // namespace poa::io
