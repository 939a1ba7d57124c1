#pragma once

#include <optional>
#include <string>

#include "poa/mmspace.hpp"
#include "poa/poa_solver.hpp"

namespace poa {

enum class InputFormat { edge_list, distance_csv };

enum class Command {
  poa,
  embed,
  mds,
  extend,
  signal_analyze,
  signal_synthesize,
  stability,
  distort,
};

// Everything one invocation needs. The tool's flag parser fills this in;
// tests drive run() with it directly.
struct RunConfig {
  Command command = Command::poa;
  std::string input_path;
  InputFormat format = InputFormat::edge_list;
  std::optional<std::string> measure_path;
  std::string output_dir = "out";
  int k = 3;
  SolverConfig solver;
  bool validate = false;
  bool emit_svg = false;

  // command-specific inputs
  std::optional<std::string> observable_path;  // extend / signal
  std::optional<std::string> queries_path;     // extend: rows x sample-points distances
  std::optional<std::string> spectrum_path;    // signal synthesize
  std::optional<std::string> signal_path;      // signal analyze
  std::optional<std::string> po_csv_path;      // reuse a previous pos.csv
  std::optional<std::string> measure2_path;    // stability: nu
  std::optional<std::string> other_input_path; // distort: second space
  InputFormat other_format = InputFormat::edge_list;
  std::optional<std::string> pairs_path;       // distort: correspondence
  std::optional<std::string> observable2_path; // distort: values on the second space
};

struct Dataset {
  FiniteMetricSpace space;
  ProbabilityMeasure measure;
  std::optional<WeightedGraph> graph;  // kept for edge-list inputs
};

/// Loads a space (+ graph for edge lists) and a measure (uniform when no
/// measure file is given; file weights are normalized).
Dataset load_dataset(const std::string& path, InputFormat format,
                     const std::optional<std::string>& measure_path = std::nullopt,
                     bool validate = false);

// Exit codes of run().
inline constexpr int kExitOk = 0;
inline constexpr int kExitAuditFail = 1;
inline constexpr int kExitInputError = 2;

/// Executes one pipeline command, writing artifacts into cfg.output_dir.
/// Returns an exit code instead of throwing for input-level problems.
int run(const RunConfig& cfg);

}  // namespace poa
