// Command-line front end: dataset ingestion, pipeline orchestration and
// report/figure emission. All heavy lifting lives in the poa library; this
// file only maps flags onto a RunConfig.

#include <optional>
#include <string>

#include <CLI11.hpp>

#include "poa/pipeline.hpp"

namespace {

struct CommonFlags {
  std::string input;
  std::string format = "edge-list";
  std::optional<std::string> measure;
  std::string out = "out";
  int k = 3;
  int restarts = 16;
  int max_ccp_iters = 100;
  double rel_tol = 1e-7;
  double variance_floor = 1e-10;
  std::uint64_t seed = 0;
  std::string mode = "pairwise";
  bool validate = false;
  bool svg = false;
};

void add_common(CLI::App* cmd, CommonFlags& flags, bool needs_k = true) {
  cmd->add_option("--input", flags.input, "input dataset path")->required();
  cmd->add_option("--format", flags.format, "edge-list | distance-csv")
      ->check(CLI::IsMember({"edge-list", "distance-csv"}));
  cmd->add_option("--measure", flags.measure, "measure file (one weight per line)");
  cmd->add_option("--out", flags.out, "output directory");
  if (needs_k) cmd->add_option("--k", flags.k, "number of principal observables");
  cmd->add_option("--restarts", flags.restarts, "solver restarts");
  cmd->add_option("--max-ccp-iters", flags.max_ccp_iters, "iteration cap per restart");
  cmd->add_option("--rel-tol", flags.rel_tol, "relative variance improvement tolerance");
  cmd->add_option("--variance-floor", flags.variance_floor, "degeneracy threshold");
  cmd->add_option("--seed", flags.seed, "random seed");
  cmd->add_option("--mode", flags.mode, "pairwise | edges Lipschitz constraints")
      ->check(CLI::IsMember({"pairwise", "edges"}));
  cmd->add_flag("--validate", flags.validate, "run full metric validation on the input");
  cmd->add_flag("--svg", flags.svg, "emit scatter figures");
}

poa::RunConfig to_config(const CommonFlags& flags, poa::Command command) {
  poa::RunConfig cfg;
  cfg.command = command;
  cfg.input_path = flags.input;
  cfg.format = flags.format == "edge-list" ? poa::InputFormat::edge_list
                                           : poa::InputFormat::distance_csv;
  cfg.measure_path = flags.measure;
  cfg.output_dir = flags.out;
  cfg.k = flags.k;
  cfg.solver.restarts = flags.restarts;
  cfg.solver.max_ccp_iters = flags.max_ccp_iters;
  cfg.solver.rel_improvement_tol = flags.rel_tol;
  cfg.solver.variance_floor = flags.variance_floor;
  cfg.solver.seed = flags.seed;
  cfg.solver.constraint_mode =
      flags.mode == "edges" ? poa::ConstraintMode::edges : poa::ConstraintMode::pairwise;
  cfg.validate = flags.validate;
  cfg.emit_svg = flags.svg;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"principal observable analysis for finite metric-measure spaces"};
  app.require_subcommand(1);

  CommonFlags poa_flags, embed_flags, mds_flags, extend_flags, analyze_flags, synth_flags,
      stability_flags, distort_flags;

  auto* cmd_poa = app.add_subcommand("poa", "compute principal observables");
  add_common(cmd_poa, poa_flags);
  std::optional<std::string> poa_po_csv;
  cmd_poa->add_option("--po", poa_po_csv, "reuse a pos.csv instead of solving");

  auto* cmd_embed = app.add_subcommand("embed", "POA embedding with distortion report");
  add_common(cmd_embed, embed_flags);
  std::optional<std::string> embed_po_csv;
  cmd_embed->add_option("--po", embed_po_csv, "reuse a pos.csv instead of solving");

  auto* cmd_mds = app.add_subcommand("mds", "classical MDS baseline");
  add_common(cmd_mds, mds_flags);

  auto* cmd_extend = app.add_subcommand("extend", "McShane-Whitney extension at query points");
  add_common(cmd_extend, extend_flags, false);
  std::string extend_obs, extend_queries;
  cmd_extend->add_option("--obs", extend_obs, "sample observable values")->required();
  cmd_extend->add_option("--queries", extend_queries, "CSV of query-to-sample distances")
      ->required();

  auto* cmd_signal = app.add_subcommand("signal", "observable-domain signal representation");
  cmd_signal->require_subcommand(1);
  auto* cmd_analyze = cmd_signal->add_subcommand("analyze", "signal -> spectrum");
  add_common(cmd_analyze, analyze_flags);
  std::string analyze_signal;
  std::optional<std::string> analyze_po_csv;
  cmd_analyze->add_option("--signal", analyze_signal, "signal file")->required();
  cmd_analyze->add_option("--po", analyze_po_csv, "reuse a pos.csv instead of solving");

  auto* cmd_synth = cmd_signal->add_subcommand("synthesize", "spectrum -> signal");
  add_common(cmd_synth, synth_flags);
  std::string synth_spectrum;
  std::optional<std::string> synth_po_csv;
  cmd_synth->add_option("--spectrum", synth_spectrum, "spectrum CSV")->required();
  cmd_synth->add_option("--po", synth_po_csv, "reuse a pos.csv instead of solving");

  auto* cmd_stability = app.add_subcommand("stability", "audit the stability bounds");
  add_common(cmd_stability, stability_flags);
  std::string stability_nu;
  cmd_stability->add_option("--measure2", stability_nu, "second measure file")->required();

  auto* cmd_distort = app.add_subcommand("distort", "correspondence distortion between spaces");
  add_common(cmd_distort, distort_flags, false);
  std::string distort_other, distort_pairs;
  std::string distort_other_format = "edge-list";
  std::optional<std::string> distort_obs, distort_obs2;
  cmd_distort->add_option("--other", distort_other, "second space input")->required();
  cmd_distort->add_option("--other-format", distort_other_format, "format of --other")
      ->check(CLI::IsMember({"edge-list", "distance-csv"}));
  cmd_distort->add_option("--pairs", distort_pairs, "correspondence file (i j per line)")
      ->required();
  cmd_distort->add_option("--obs", distort_obs, "values on the first space");
  cmd_distort->add_option("--obs2", distort_obs2, "values on the second space");

  CLI11_PARSE(app, argc, argv);

  poa::RunConfig cfg;
  if (cmd_poa->parsed()) {
    cfg = to_config(poa_flags, poa::Command::poa);
    cfg.po_csv_path = poa_po_csv;
  } else if (cmd_embed->parsed()) {
    cfg = to_config(embed_flags, poa::Command::embed);
    cfg.po_csv_path = embed_po_csv;
  } else if (cmd_mds->parsed()) {
    cfg = to_config(mds_flags, poa::Command::mds);
  } else if (cmd_extend->parsed()) {
    cfg = to_config(extend_flags, poa::Command::extend);
    cfg.observable_path = extend_obs;
    cfg.queries_path = extend_queries;
  } else if (cmd_analyze->parsed()) {
    cfg = to_config(analyze_flags, poa::Command::signal_analyze);
    cfg.signal_path = analyze_signal;
    cfg.po_csv_path = analyze_po_csv;
  } else if (cmd_synth->parsed()) {
    cfg = to_config(synth_flags, poa::Command::signal_synthesize);
    cfg.spectrum_path = synth_spectrum;
    cfg.po_csv_path = synth_po_csv;
  } else if (cmd_stability->parsed()) {
    cfg = to_config(stability_flags, poa::Command::stability);
    cfg.measure2_path = stability_nu;
  } else if (cmd_distort->parsed()) {
    cfg = to_config(distort_flags, poa::Command::distort);
    cfg.other_input_path = distort_other;
    cfg.other_format = distort_other_format == "edge-list" ? poa::InputFormat::edge_list
                                                           : poa::InputFormat::distance_csv;
    cfg.pairs_path = distort_pairs;
    cfg.observable_path = distort_obs;
    cfg.observable2_path = distort_obs2;
  }
  return poa::run(cfg);
}
