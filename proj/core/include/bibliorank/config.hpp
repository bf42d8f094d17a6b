#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "bibliorank/corpus.hpp"
#include "bibliorank/indicators.hpp"
#include "bibliorank/ingest.hpp"
#include "bibliorank/ranking.hpp"

namespace bibliorank {

/// Everything a pipeline run depends on besides the snapshot itself.
///
/// The on-disk form is an INI file:
///
///   [window]      start, end, census_date
///   [validation]  fatal, skip_unknown_types, strict_sds, known_sds (comma list)
///   [fractional]  mode (uniform|position_weighted), w_first, w_last, w_second, w_penultimate
///   [weights]     p, fp, ss_pii, fss_pii, ss_pir, fss_pir, qi_pii, qi_pir
///   [ranking]     mode (by_sds|by_sds_and_rank)
///   [top]         publications, performers
///   [output]      dir
///
/// Unknown sections or keys are rejected.
struct RunConfig {
  YearWindow window{2004, 2006};
  CensusDate census_date = CensusDate::parse("2008-03-31");
  RankingMode ranking_mode = RankingMode::by_sds_and_rank;
  FractionalScheme scheme;
  /// Report-time composite weights; all zero disables the composite column.
  PerIndicator<double> report_weights{};
  double top_publications = 0.01;
  double top_performers = 0.10;
  bool fatal_violations = true;
  bool skip_unknown_types = false;
  bool strict_sds = false;
  std::vector<std::string> known_sds;
  std::filesystem::path output_dir = "out";

  /// Throws Error{config} on inconsistent values.
  void validate() const;
  IngestOptions ingest_options() const;
  bool has_composite() const noexcept;

  /// Stable textual form (same INI layout, fixed key order and number
  /// formatting); hashing it identifies the configuration in manifests.
  std::string canonical_text() const;
};

RunConfig parse_run_config(std::istream& in);
RunConfig load_run_config(const std::filesystem::path& path);

}  // namespace bibliorank
