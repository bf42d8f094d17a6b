#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "bibliorank/config.hpp"
#include "overrides.hpp"

namespace bibliorank::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;  // oracle-check found mismatches
inline constexpr int kExitBadInput = 2;
inline constexpr int kExitInternal = 3;

struct Streams {
  std::ostream& out;
  std::ostream& err;
};

struct IngestArgs {
  std::filesystem::path publications;
  std::filesystem::path researchers;
  /// Defaults to <output_dir>/snapshot.json.
  std::optional<std::filesystem::path> snapshot;
  ConfigOverrides overrides;
};

struct ScoreArgs {
  std::filesystem::path snapshot;
  ConfigOverrides overrides;
};

struct ReportArgs {
  /// Directory holding a score run's manifest.json.
  std::filesystem::path run_dir;
  std::optional<std::filesystem::path> unit_spec;
  /// Applied on top of the configuration recorded by the score run.
  ConfigOverrides overrides;
};

struct SynthArgs {
  std::string preset = "small";  // small | national
  std::uint64_t seed = 1;
  std::optional<std::filesystem::path> generator_config;  // JSON; replaces the preset
  std::filesystem::path output_dir = "synth";
};

struct OracleCheckArgs {
  std::optional<std::filesystem::path> snapshot;  // check one snapshot instead of random corpora
  std::size_t corpora = 100;
  std::uint64_t first_seed = 1;
  std::string modes = "both";  // by_sds | by_sds_and_rank | both
  ConfigOverrides overrides;
};

int run_ingest(const IngestArgs& args, Streams io);
int run_score(const ScoreArgs& args, Streams io);
int run_report(const ReportArgs& args, Streams io);
int run_synth(const SynthArgs& args, Streams io);
int run_oracle_check(const OracleCheckArgs& args, Streams io);

/// One-line JSON error record: {"error": code, "message": ..., "line": n?}.
std::string error_record(const std::exception& e);

std::string tool_version();

}  // namespace bibliorank::cli
