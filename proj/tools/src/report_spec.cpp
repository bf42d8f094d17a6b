#include "report_spec.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "bibliorank/error.hpp"

namespace bibliorank::cli {

using nlohmann::json;

std::vector<std::string> UnitSelection::resolve(const std::map<std::string, std::vector<std::string>>& available,
                                                std::string_view kind) const {
  if (all) {
    std::vector<std::string> out;
    for (const auto& [name, members] : available) out.push_back(name);
    return out;
  }
  for (const auto& name : names) {
    if (!available.contains(name)) throw Error(ErrorCode::not_found, fmt::format("unknown {} '{}'", kind, name));
  }
  return names;
}

std::vector<std::string> resolve_members(const ResearcherTable& table, const CorpusSnapshot& snapshot) {
  if (!table.researcher_ids.empty()) return table.researcher_ids;
  std::vector<std::string> out;
  for (const auto& r : snapshot.researchers()) {
    if (table.sds && r.sds != *table.sds) continue;
    if (table.rank && r.rank != *table.rank) continue;
    if (out.empty() || out.back() != r.researcher_id) out.push_back(r.researcher_id);
  }
  return out;
}

UnitSpec UnitSpec::everything(const CorpusSnapshot& snapshot) {
  UnitSpec spec;
  std::set<std::string> sds;
  for (const auto& r : snapshot.researchers()) sds.insert(r.sds);
  for (const auto& code : sds) spec.researcher_tables.push_back({code, {}, code, std::nullopt});
  spec.groups.all = true;
  spec.departments.all = true;
  spec.sds_units_all = true;
  spec.top_performers.assign(kAllIndicators.begin(), kAllIndicators.end());
  return spec;
}

namespace {

bool is_all(const json& node) { return node.is_string() && node.get<std::string>() == "all"; }

UnitSelection selection(const json& doc, const char* key) {
  UnitSelection out;
  if (!doc.contains(key)) return out;
  const json& node = doc.at(key);
  if (is_all(node)) {
    out.all = true;
  } else {
    out.names = node.get<std::vector<std::string>>();
  }
  return out;
}

}  // namespace

UnitSpec parse_unit_spec(std::string_view json_text) {
  static const std::vector<std::string> kKeys = {"researcher_tables", "groups", "departments", "sds_units",
                                                 "top_performers"};
  try {
    const json doc = json::parse(json_text);
    if (!doc.is_object()) throw Error(ErrorCode::config, "unit spec must be a JSON object");
    for (const auto& [key, value] : doc.items()) {
      if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end()) {
        throw Error(ErrorCode::config, fmt::format("unknown unit spec key '{}'", key));
      }
    }
    UnitSpec spec;
    for (const auto& t : doc.value("researcher_tables", json::array())) {
      ResearcherTable table;
      table.title = t.at("title").get<std::string>();
      table.researcher_ids = t.value("researchers", std::vector<std::string>{});
      if (t.contains("sds")) table.sds = t.at("sds").get<std::string>();
      if (t.contains("rank")) {
        const auto text = t.at("rank").get<std::string>();
        table.rank = parse_academic_rank(text);
        if (!table.rank) throw Error(ErrorCode::config, fmt::format("unknown rank '{}' in unit spec", text));
      }
      if (table.researcher_ids.empty() && !table.sds) {
        throw Error(ErrorCode::config, fmt::format("researcher table '{}' needs researchers or an sds", table.title));
      }
      spec.researcher_tables.push_back(std::move(table));
    }
    spec.groups = selection(doc, "groups");
    spec.departments = selection(doc, "departments");
    if (doc.contains("sds_units")) {
      const json& node = doc.at("sds_units");
      if (is_all(node)) {
        spec.sds_units_all = true;
      } else {
        for (const auto& u : node) {
          spec.sds_units.emplace_back(u.at("university").get<std::string>(), u.at("sds").get<std::string>());
        }
      }
    }
    if (doc.contains("top_performers")) {
      const json& node = doc.at("top_performers");
      if (is_all(node)) {
        spec.top_performers.assign(kAllIndicators.begin(), kAllIndicators.end());
      } else {
        for (const auto& name : node.get<std::vector<std::string>>()) {
          auto indicator = parse_indicator(name);
          if (!indicator) throw Error(ErrorCode::config, fmt::format("unknown indicator '{}' in unit spec", name));
          spec.top_performers.push_back(*indicator);
        }
      }
    }
    return spec;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::config, fmt::format("unit spec: {}", e.what()));
  }
}

UnitSpec load_unit_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io, fmt::format("cannot open '{}'", path.string()));
  std::stringstream text;
  text << in.rdbuf();
  return parse_unit_spec(text.str());
}

}  // namespace bibliorank::cli
