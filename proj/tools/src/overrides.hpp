#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "bibliorank/config.hpp"

namespace bibliorank::cli {

/// Command-line values that take precedence over the config file. Unset
/// members leave the file (or built-in default) in place.
struct ConfigOverrides {
  std::optional<std::filesystem::path> config_file;
  std::optional<int> window_start;
  std::optional<int> window_end;
  std::optional<std::string> census_date;
  std::optional<std::string> ranking_mode;
  std::optional<std::string> fractional_mode;
  std::optional<double> w_first;
  std::optional<double> w_last;
  std::optional<double> w_second;
  std::optional<double> w_penultimate;
  std::vector<std::string> report_weights;  // "indicator=weight"
  std::optional<double> top_publications;
  std::optional<double> top_performers;
  std::optional<bool> fatal_violations;
  std::optional<bool> skip_unknown_types;
  std::optional<bool> strict_sds;
  std::optional<std::string> known_sds;  // comma list
  std::optional<std::filesystem::path> output_dir;
};

void apply_overrides(RunConfig& config, const ConfigOverrides& overrides);

/// File (if any) plus overrides, validated.
RunConfig resolve_config(const ConfigOverrides& overrides);

}  // namespace bibliorank::cli
