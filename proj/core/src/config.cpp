#include "bibliorank/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

#include "bibliorank/error.hpp"

namespace bibliorank {

namespace pt = boost::property_tree;

namespace {

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"window", {"start", "end", "census_date"}},
      {"validation", {"fatal", "skip_unknown_types", "strict_sds", "known_sds"}},
      {"fractional", {"mode", "w_first", "w_last", "w_second", "w_penultimate"}},
      {"weights", {"p", "fp", "ss_pii", "fss_pii", "ss_pir", "fss_pir", "qi_pii", "qi_pir"}},
      {"ranking", {"mode"}},
      {"top", {"publications", "performers"}},
      {"output", {"dir"}},
  };
  return keys;
}

template <class T>
T get(const pt::ptree& tree, const std::string& path, T fallback) {
  auto node = tree.get_optional<std::string>(path);
  if (!node) return fallback;
  auto parsed = tree.get_optional<T>(path);
  if (!parsed) throw Error(ErrorCode::config, fmt::format("'{}' has invalid value '{}'", path, *node));
  return *parsed;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    const auto last = item.find_last_not_of(" \t");
    if (first != std::string::npos) out.push_back(item.substr(first, last - first + 1));
  }
  return out;
}

}  // namespace

void RunConfig::validate() const {
  if (window.start > window.end) {
    throw Error(ErrorCode::config, fmt::format("window start {} is after end {}", window.start, window.end));
  }
  for (double w : report_weights) {
    if (!(w >= 0.0)) throw Error(ErrorCode::config, "report weights must be non-negative");
  }
  if (!(top_publications > 0.0 && top_publications <= 1.0)) {
    throw Error(ErrorCode::config, "top publications fraction must be in (0, 1]");
  }
  if (!(top_performers > 0.0 && top_performers < 1.0)) {
    throw Error(ErrorCode::config, "top performers fraction must be in (0, 1)");
  }
  if (strict_sds && known_sds.empty()) {
    throw Error(ErrorCode::config, "strict_sds requires a known_sds list");
  }
  scheme.validate();
}

IngestOptions RunConfig::ingest_options() const {
  IngestOptions options;
  options.window = window;
  options.census_date = census_date;
  options.fatal_violations = fatal_violations;
  options.skip_unknown_types = skip_unknown_types;
  if (strict_sds) options.validation.known_sds = std::set<std::string>(known_sds.begin(), known_sds.end());
  return options;
}

bool RunConfig::has_composite() const noexcept {
  for (double w : report_weights) {
    if (w > 0.0) return true;
  }
  return false;
}

std::string RunConfig::canonical_text() const {
  std::string known;
  for (std::size_t i = 0; i < known_sds.size(); ++i) known += (i ? "," : "") + known_sds[i];
  std::string out;
  out += fmt::format("[window]\nstart={}\nend={}\ncensus_date={}\n", window.start, window.end, census_date.iso());
  out += fmt::format("[validation]\nfatal={}\nskip_unknown_types={}\nstrict_sds={}\nknown_sds={}\n",
                     fatal_violations, skip_unknown_types, strict_sds, known);
  out += fmt::format("[fractional]\nmode={}\nw_first={}\nw_last={}\nw_second={}\nw_penultimate={}\n",
                     to_string(scheme.mode), scheme.weights.first, scheme.weights.last, scheme.weights.second,
                     scheme.weights.penultimate);
  out += "[weights]\n";
  for (Indicator i : kAllIndicators) {
    out += fmt::format("{}={}\n", to_string(i), report_weights[static_cast<std::size_t>(i)]);
  }
  out += fmt::format("[ranking]\nmode={}\n", to_string(ranking_mode));
  out += fmt::format("[top]\npublications={}\nperformers={}\n", top_publications, top_performers);
  out += fmt::format("[output]\ndir={}\n", output_dir.generic_string());
  return out;
}

RunConfig parse_run_config(std::istream& in) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw Error(ErrorCode::config, fmt::format("config: {}", e.message()), e.line());
  }
  for (const auto& [section, body] : tree) {
    auto known = known_keys().find(section);
    if (known == known_keys().end()) {
      throw Error(ErrorCode::config, fmt::format("unknown config section [{}]", section));
    }
    for (const auto& [key, _] : body) {
      if (!known->second.contains(key)) {
        throw Error(ErrorCode::config, fmt::format("unknown config key '{}' in [{}]", key, section));
      }
    }
  }

  RunConfig c;
  c.window.start = get(tree, "window.start", c.window.start);
  c.window.end = get(tree, "window.end", c.window.end);
  if (auto date = tree.get_optional<std::string>("window.census_date")) c.census_date = CensusDate::parse(*date);

  c.fatal_violations = get(tree, "validation.fatal", c.fatal_violations);
  c.skip_unknown_types = get(tree, "validation.skip_unknown_types", c.skip_unknown_types);
  c.strict_sds = get(tree, "validation.strict_sds", c.strict_sds);
  if (auto list = tree.get_optional<std::string>("validation.known_sds")) c.known_sds = split_list(*list);

  if (auto mode = tree.get_optional<std::string>("fractional.mode")) {
    auto parsed = parse_fractional_mode(*mode);
    if (!parsed) throw Error(ErrorCode::config, fmt::format("unknown fractional mode '{}'", *mode));
    c.scheme.mode = *parsed;
  }
  c.scheme.weights.first = get(tree, "fractional.w_first", c.scheme.weights.first);
  c.scheme.weights.last = get(tree, "fractional.w_last", c.scheme.weights.last);
  c.scheme.weights.second = get(tree, "fractional.w_second", c.scheme.weights.second);
  c.scheme.weights.penultimate = get(tree, "fractional.w_penultimate", c.scheme.weights.penultimate);

  for (Indicator i : kAllIndicators) {
    auto& w = c.report_weights[static_cast<std::size_t>(i)];
    w = get(tree, "weights." + std::string(to_string(i)), w);
  }

  if (auto mode = tree.get_optional<std::string>("ranking.mode")) {
    auto parsed = parse_ranking_mode(*mode);
    if (!parsed) throw Error(ErrorCode::config, fmt::format("unknown ranking mode '{}'", *mode));
    c.ranking_mode = *parsed;
  }
  c.top_publications = get(tree, "top.publications", c.top_publications);
  c.top_performers = get(tree, "top.performers", c.top_performers);
  if (auto dir = tree.get_optional<std::string>("output.dir")) c.output_dir = *dir;

  c.validate();
  return c;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io, fmt::format("cannot open config '{}'", path.string()));
  return parse_run_config(in);
}

}  // namespace bibliorank
