#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

namespace {

using bibliorank::cli::ConfigOverrides;

// Flags shared by every subcommand that reads a RunConfig.
void add_config_flags(CLI::App& cmd, ConfigOverrides& o) {
  cmd.add_option("-c,--config", o.config_file, "INI run configuration")->check(CLI::ExistingFile);
  cmd.add_option("--window-start", o.window_start, "First publication year");
  cmd.add_option("--window-end", o.window_end, "Last publication year");
  cmd.add_option("--census-date", o.census_date, "Citation census date (YYYY-MM-DD)");
  cmd.add_option("--ranking-mode", o.ranking_mode, "by_sds | by_sds_and_rank");
  cmd.add_option("--fractional-mode", o.fractional_mode, "uniform | position_weighted");
  cmd.add_option("--w-first", o.w_first, "Positional weight of the first author");
  cmd.add_option("--w-last", o.w_last, "Positional weight of the last author");
  cmd.add_option("--w-second", o.w_second, "Positional weight of the second author");
  cmd.add_option("--w-penultimate", o.w_penultimate, "Positional weight of the penultimate author");
  cmd.add_option("--weight", o.report_weights, "Composite weight, indicator=value (repeatable)");
  cmd.add_option("--top-publications", o.top_publications, "Top-cited fraction per stratum");
  cmd.add_option("--top-performers", o.top_performers, "Top-performer fraction per stratum");
  cmd.add_option("--fatal-violations", o.fatal_violations, "Abort ingest on validation violations");
  cmd.add_option("--skip-unknown-types", o.skip_unknown_types, "Skip unsupported doc types with a warning");
  cmd.add_option("--strict-sds", o.strict_sds, "Reject SDS codes outside --known-sds");
  cmd.add_option("--known-sds", o.known_sds, "Comma-separated list of valid SDS codes");
  cmd.add_option("-o,--output-dir", o.output_dir, "Output directory");
}

}  // namespace

int main(int argc, char** argv) {
  namespace cli = bibliorank::cli;
  CLI::App app{"Field-normalized bibliometric indicators and national percentile rankings"};
  app.set_version_flag("--version", cli::tool_version());
  app.require_subcommand(1);

  cli::IngestArgs ingest;
  auto* ingest_cmd = app.add_subcommand("ingest", "Load publications and the researcher registry into a snapshot");
  ingest_cmd->add_option("publications", ingest.publications, "Publications (JSON Lines)")->required();
  ingest_cmd->add_option("researchers", ingest.researchers, "Researcher registry (CSV)")->required();
  ingest_cmd->add_option("-s,--snapshot", ingest.snapshot, "Snapshot file (default <output-dir>/snapshot.json)");
  add_config_flags(*ingest_cmd, ingest.overrides);

  cli::ScoreArgs score;
  auto* score_cmd = app.add_subcommand("score", "Compute baselines, indicators and percentiles");
  score_cmd->add_option("snapshot", score.snapshot, "Snapshot file")->required()->check(CLI::ExistingFile);
  add_config_flags(*score_cmd, score.overrides);

  cli::ReportArgs report;
  auto* report_cmd = app.add_subcommand("report", "Emit researcher, group, department and SDS unit tables");
  report_cmd->add_option("run", report.run_dir, "Directory of a score run")->required()->check(CLI::ExistingDirectory);
  report_cmd->add_option("-u,--units", report.unit_spec, "Unit spec (JSON)")->check(CLI::ExistingFile);
  add_config_flags(*report_cmd, report.overrides);

  cli::SynthArgs synth;
  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic corpus");
  synth_cmd->add_option("--preset", synth.preset, "small | national")->capture_default_str();
  synth_cmd->add_option("--seed", synth.seed, "Random seed")->capture_default_str();
  synth_cmd->add_option("-g,--generator-config", synth.generator_config, "Generator config (JSON)")
      ->check(CLI::ExistingFile);
  synth_cmd->add_option("-o,--output-dir", synth.output_dir, "Output directory")->capture_default_str();

  cli::OracleCheckArgs oracle;
  auto* oracle_cmd = app.add_subcommand("oracle-check", "Compare pipeline percentiles with the brute-force oracle");
  oracle_cmd->add_option("--snapshot", oracle.snapshot, "Check this snapshot instead of random corpora")
      ->check(CLI::ExistingFile);
  oracle_cmd->add_option("--corpora", oracle.corpora, "Number of random corpora")->capture_default_str();
  oracle_cmd->add_option("--first-seed", oracle.first_seed, "Seed of the first corpus")->capture_default_str();
  oracle_cmd->add_option("--modes", oracle.modes, "by_sds | by_sds_and_rank | both")->capture_default_str();
  add_config_flags(*oracle_cmd, oracle.overrides);

  CLI11_PARSE(app, argc, argv);

  const cli::Streams io{std::cout, std::cerr};
  if (*ingest_cmd) return cli::run_ingest(ingest, io);
  if (*score_cmd) return cli::run_score(score, io);
  if (*report_cmd) return cli::run_report(report, io);
  if (*synth_cmd) return cli::run_synth(synth, io);
  return cli::run_oracle_check(oracle, io);
}
