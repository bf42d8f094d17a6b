#include "overrides.hpp"

#include <sstream>

#include <fmt/format.h>

#include "bibliorank/error.hpp"

namespace bibliorank::cli {

void apply_overrides(RunConfig& config, const ConfigOverrides& o) {
  if (o.window_start) config.window.start = *o.window_start;
  if (o.window_end) config.window.end = *o.window_end;
  if (o.census_date) config.census_date = CensusDate::parse(*o.census_date);
  if (o.ranking_mode) {
    auto mode = parse_ranking_mode(*o.ranking_mode);
    if (!mode) throw Error(ErrorCode::config, fmt::format("unknown ranking mode '{}'", *o.ranking_mode));
    config.ranking_mode = *mode;
  }
  if (o.fractional_mode) {
    auto mode = parse_fractional_mode(*o.fractional_mode);
    if (!mode) throw Error(ErrorCode::config, fmt::format("unknown fractional mode '{}'", *o.fractional_mode));
    config.scheme.mode = *mode;
  }
  if (o.w_first) config.scheme.weights.first = *o.w_first;
  if (o.w_last) config.scheme.weights.last = *o.w_last;
  if (o.w_second) config.scheme.weights.second = *o.w_second;
  if (o.w_penultimate) config.scheme.weights.penultimate = *o.w_penultimate;
  for (const auto& item : o.report_weights) {
    const auto eq = item.find('=');
    const auto indicator = eq == std::string::npos ? std::nullopt : parse_indicator(item.substr(0, eq));
    if (!indicator) throw Error(ErrorCode::config, fmt::format("bad report weight '{}'; want indicator=value", item));
    try {
      std::size_t used = 0;
      const std::string number = item.substr(eq + 1);
      const double w = std::stod(number, &used);
      if (used != number.size()) throw std::invalid_argument(number);
      config.report_weights[static_cast<std::size_t>(*indicator)] = w;
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::config, fmt::format("bad report weight '{}'; want indicator=value", item));
    }
  }
  if (o.top_publications) config.top_publications = *o.top_publications;
  if (o.top_performers) config.top_performers = *o.top_performers;
  if (o.fatal_violations) config.fatal_violations = *o.fatal_violations;
  if (o.skip_unknown_types) config.skip_unknown_types = *o.skip_unknown_types;
  if (o.strict_sds) config.strict_sds = *o.strict_sds;
  if (o.known_sds) {
    config.known_sds.clear();
    std::stringstream stream(*o.known_sds);
    std::string code;
    while (std::getline(stream, code, ',')) {
      if (!code.empty()) config.known_sds.push_back(code);
    }
  }
  if (o.output_dir) config.output_dir = *o.output_dir;
}

RunConfig resolve_config(const ConfigOverrides& overrides) {
  RunConfig config = overrides.config_file ? load_run_config(*overrides.config_file) : RunConfig{};
  apply_overrides(config, overrides);
  config.validate();
  return config;
}

}  // namespace bibliorank::cli
