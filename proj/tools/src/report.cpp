#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "bibliorank/aggregate.hpp"
#include "bibliorank/error.hpp"
#include "bibliorank/ingest.hpp"
#include "bibliorank/manifest.hpp"
#include "bibliorank/pipeline.hpp"
#include "commands.hpp"
#include "report_spec.hpp"
#include "run_io.hpp"

namespace bibliorank::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string fixed2(double x) { return fmt::format("{:.2f}", x); }
std::string fixed2(const std::optional<double>& x) { return x ? fixed2(*x) : std::string("n/a"); }

std::string csv2(const std::optional<double>& x) { return x ? fixed2(*x) : std::string(); }

// Plain-text table with right-aligned numeric columns.
class TextTable {
 public:
  explicit TextTable(std::vector<std::string> header) : rows_{std::move(header)} {}
  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  std::string render(const std::string& title) const {
    std::vector<std::size_t> width(rows_.front().size(), 0);
    for (const auto& row : rows_) {
      for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
    }
    std::string out = title + "\n";
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      for (std::size_t i = 0; i < rows_[r].size(); ++i) {
        if (i) out += "  ";
        out += i == 0 ? fmt::format("{:<{}}", rows_[r][i], width[i]) : fmt::format("{:>{}}", rows_[r][i], width[i]);
      }
      out += '\n';
      if (r == 0) {
        std::size_t total = 2 * (width.size() - 1);
        for (auto w : width) total += w;
        out += std::string(total, '-') + '\n';
      }
    }
    return out + '\n';
  }

 private:
  std::vector<std::vector<std::string>> rows_;
};

std::vector<std::string> indicator_headings() {
  std::vector<std::string> out;
  for (Indicator i : kAllIndicators) out.emplace_back(display_name(i));
  return out;
}

std::string indicator_csv_columns(std::string_view suffix) {
  std::string out;
  for (Indicator i : kAllIndicators) out += fmt::format(",{}{}", to_string(i), suffix);
  return out;
}

std::optional<double> composite(const RunConfig& config, const PerIndicator<double>& percentile) {
  if (!config.has_composite()) return std::nullopt;
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < kIndicatorCount; ++i) {
    num += config.report_weights[i] * percentile[i];
    den += config.report_weights[i];
  }
  return num / den;
}

struct Report {
  std::string text;
  std::string researchers_csv;
  std::string groups_csv;
  std::string sds_units_csv;
  std::string top_subset_csv;
  std::string top_performers_csv;
};

void researcher_tables(const UnitSpec& spec, const CorpusSnapshot& snapshot, const PipelineResult& run,
                       const RunConfig& config, Report& report) {
  if (spec.researcher_tables.empty()) return;
  std::string csv = "table,researcher_id,sds,rank" + indicator_csv_columns("") +
                    indicator_csv_columns("_percentile") + (config.has_composite() ? ",composite" : "") + "\n";
  for (const auto& table : spec.researcher_tables) {
    const auto ids = resolve_members(table, snapshot);
    auto header = indicator_headings();
    header.insert(header.begin(), {"Researcher", "SDS", "Rank"});
    TextTable values(header);
    if (config.has_composite()) header.push_back("Composite");
    TextTable percentiles(header);
    for (const auto& id : ids) {
      const Researcher* r = snapshot.find_researcher(id);
      const auto vec = run.indicators.find(id);
      const auto pct = run.percentiles.find(id);
      if (r == nullptr || vec == run.indicators.end() || pct == run.percentiles.end()) {
        throw Error(ErrorCode::not_found, fmt::format("report table '{}': unknown researcher '{}'", table.title, id));
      }
      std::vector<std::string> vrow = {id, r->sds, std::string(to_string(r->rank))};
      std::vector<std::string> prow = vrow;
      std::string line = fmt::format("{},{},{},{}", table.title, id, r->sds, to_string(r->rank));
      for (Indicator i : kAllIndicators) {
        const auto v = vec->second.value(i);
        vrow.push_back(i == Indicator::p ? std::to_string(vec->second.p) : fixed2(v));
        prow.push_back(fixed2(pct->second.at(i)));
        line += "," + csv2(v);
      }
      for (Indicator i : kAllIndicators) line += "," + fixed2(pct->second.at(i));
      if (auto c = composite(config, pct->second.percentile)) {
        prow.push_back(fixed2(*c));
        line += "," + fixed2(*c);
      }
      values.add(std::move(vrow));
      percentiles.add(std::move(prow));
      csv += line + "\n";
    }
    report.text += values.render(fmt::format("{}: indicator values", table.title));
    report.text += percentiles.render(fmt::format("{}: national percentiles ({})", table.title,
                                                  to_string(config.ranking_mode)));
  }
  report.researchers_csv = csv;
}

void group_tables(const UnitSpec& spec, const CorpusSnapshot& snapshot, const PipelineResult& run,
                  const RunConfig& config, Report& report) {
  if (spec.groups.none() && spec.departments.none()) return;
  std::string csv = "kind,unit,members,sds_count" + indicator_csv_columns("_percentile") +
                    (config.has_composite() ? ",composite" : "") + "\n";
  auto emit = [&](const std::string& kind, const std::map<std::string, std::vector<std::string>>& available,
                  const UnitSelection& selection) {
    if (selection.none()) return;
    auto header = indicator_headings();
    header.insert(header.begin(), {"Unit", "Members", "SDSs"});
    if (config.has_composite()) header.push_back("Composite");
    TextTable table(header);
    for (const auto& unit : selection.resolve(available, kind)) {
      const auto profile = group_profile(run.percentiles, available.at(unit), unit);
      std::vector<std::string> row = {unit, std::to_string(profile.member_count), std::to_string(profile.sds_count)};
      std::string line = fmt::format("{},{},{},{}", kind, unit, profile.member_count, profile.sds_count);
      for (Indicator i : kAllIndicators) {
        row.push_back(fixed2(profile.at(i)));
        line += "," + fixed2(profile.at(i));
      }
      if (auto c = composite(config, profile.mean_percentile)) {
        row.push_back(fixed2(*c));
        line += "," + fixed2(*c);
      }
      table.add(std::move(row));
      csv += line + "\n";
    }
    report.text += table.render(fmt::format("Mean member percentiles by {}", kind));
  };
  emit("group", group_members(snapshot), spec.groups);
  emit("department", department_members(snapshot), spec.departments);
  report.groups_csv = csv;
}

std::vector<SdsUnitProfile> selected_units(std::vector<SdsUnitProfile> all, const UnitSpec& spec) {
  if (spec.sds_units_all) return all;
  std::vector<SdsUnitProfile> out;
  for (const auto& [university, sds] : spec.sds_units) {
    auto it = std::find_if(all.begin(), all.end(),
                           [&](const SdsUnitProfile& u) { return u.university == university && u.sds == sds; });
    if (it == all.end()) {
      throw Error(ErrorCode::not_found, fmt::format("no staff for SDS unit {} at {}", sds, university));
    }
    out.push_back(*it);
  }
  return out;
}

std::string unit_rows(const std::vector<SdsUnitProfile>& units, const RunConfig& config, const std::string& title,
                      std::string& text) {
  std::string csv = "university,sds,staff,papers" + indicator_csv_columns("") + indicator_csv_columns("_per_year") +
                    indicator_csv_columns("_percentile") + ",peer_units" +
                    (config.has_composite() ? ",composite" : "") + "\n";
  auto header = indicator_headings();
  header.insert(header.begin(), {"University", "SDS", "Staff", "Papers"});
  TextTable raw(header), yearly(header);
  header.erase(header.begin() + 2, header.begin() + 4);
  header.push_back("Peers");
  if (config.has_composite()) header.push_back("Composite");
  TextTable ranked(header);
  for (const auto& u : units) {
    std::vector<std::string> head = {u.university, u.sds, std::to_string(u.staff_count), std::to_string(u.paper_count)};
    std::vector<std::string> rrow = head, yrow = head, prow = {u.university, u.sds};
    std::string line = fmt::format("{},{},{},{}", u.university, u.sds, u.staff_count, u.paper_count);
    for (Indicator i : kAllIndicators) {
      rrow.push_back(fixed2(u.value(i)));
      line += "," + csv2(u.value(i));
    }
    for (Indicator i : kAllIndicators) {
      yrow.push_back(fixed2(u.annualized(i)));
      line += "," + csv2(u.annualized(i));
    }
    for (Indicator i : kAllIndicators) {
      prow.push_back(fixed2(u.percentile[static_cast<std::size_t>(i)]));
      line += "," + fixed2(u.percentile[static_cast<std::size_t>(i)]);
    }
    prow.push_back(std::to_string(u.peer_count));
    line += fmt::format(",{}", u.peer_count);
    if (auto c = composite(config, u.percentile)) {
      prow.push_back(fixed2(*c));
      line += "," + fixed2(*c);
    }
    raw.add(std::move(rrow));
    yearly.add(std::move(yrow));
    ranked.add(std::move(prow));
    csv += line + "\n";
  }
  text += raw.render(title + ": per staff member (QI per paper)");
  text += yearly.render(title + ": per staff member per year");
  text += ranked.render(title + ": percentile among same-SDS units");
  return csv;
}

void unit_tables(const UnitSpec& spec, const CorpusSnapshot& snapshot, const PipelineResult& run,
                 const RunConfig& config, Report& report) {
  if (!spec.sds_units_all && spec.sds_units.empty()) return;
  report.sds_units_csv = unit_rows(selected_units(all_sds_unit_profiles(snapshot, run.scores, config.scheme), spec),
                                   config, "SDS units", report.text);

  const auto subset = top_cited_subset(snapshot, config.top_publications);
  const auto title = fmt::format("SDS units, top {}% cited publications", config.top_publications * 100.0);
  report.top_subset_csv = unit_rows(
      selected_units(all_sds_unit_profiles(snapshot, run.scores, config.scheme, filter_from(subset)), spec), config,
      title, report.text);
}

void performer_tables(const UnitSpec& spec, const CorpusSnapshot& snapshot, const PipelineResult& run,
                      const RunConfig& config, Report& report) {
  if (spec.top_performers.empty()) return;
  std::string csv = "indicator,scope,unit,staff,top_count,share_of_top,top_rate\n";
  for (Indicator indicator : spec.top_performers) {
    const auto table = top_performers(run.percentiles, snapshot, indicator, config.top_performers);
    for (const auto& [scope, rows] : {std::pair{"university", &table.by_university}, std::pair{"sds", &table.by_sds}}) {
      TextTable text({scope == std::string("sds") ? "SDS" : "University", "Staff", "Top", "Share of top", "Top rate"});
      for (const auto& row : *rows) {
        text.add({row.unit, std::to_string(row.staff), std::to_string(row.top_count), fixed2(row.share_of_top),
                  fixed2(row.top_rate)});
        csv += fmt::format("{},{},{},{},{},{},{}\n", to_string(indicator), scope, row.unit, row.staff, row.top_count,
                           fixed2(row.share_of_top), fixed2(row.top_rate));
      }
      report.text += text.render(fmt::format("Top {}% on {} (percentile >= {}) by {}", config.top_performers * 100.0,
                                             display_name(indicator), fixed2(table.cutoff), scope));
    }
  }
  report.top_performers_csv = csv;
}

}  // namespace

int run_report(const ReportArgs& args, Streams io) {
  return guarded(io.err, [&] {
    const fs::path manifest_path = args.run_dir / "manifest.json";
    std::ifstream in(manifest_path);
    if (!in) throw Error(ErrorCode::io, fmt::format("cannot open '{}'", manifest_path.string()));
    std::stringstream manifest_text;
    manifest_text << in.rdbuf();
    const RunManifest scored = RunManifest::from_json(manifest_text.str());

    if (sha256_file(scored.snapshot_path) != scored.snapshot_sha256) {
      throw Error(ErrorCode::validation,
                  fmt::format("snapshot '{}' changed since it was scored", scored.snapshot_path));
    }
    const CorpusSnapshot snapshot = read_snapshot(scored.snapshot_path);

    RunConfig config;
    if (args.overrides.config_file) {
      config = load_run_config(*args.overrides.config_file);
    } else {
      std::istringstream recorded(scored.config_text);
      config = parse_run_config(recorded);
    }
    config.output_dir = args.run_dir;
    apply_overrides(config, args.overrides);
    config.validate();

    const UnitSpec spec = args.unit_spec ? load_unit_spec(*args.unit_spec) : UnitSpec::everything(snapshot);

    RunManifest manifest;
    manifest.tool_version = tool_version();
    manifest.command = "report";
    manifest.snapshot_path = scored.snapshot_path;
    manifest.snapshot_sha256 = scored.snapshot_sha256;
    manifest.config_text = config.canonical_text();
    manifest.config_sha256 = sha256_hex(manifest.config_text);
    manifest.census_date = snapshot.census_date().iso();

    Report report;
    if (snapshot.empty()) {
      manifest.warnings.push_back("snapshot is empty; report has no rows");
    } else {
      const PipelineResult run = run_pipeline(snapshot, config.scheme, config.ranking_mode);
      manifest.warnings = run.warnings;
      researcher_tables(spec, snapshot, run, config, report);
      group_tables(spec, snapshot, run, config, report);
      unit_tables(spec, snapshot, run, config, report);
      performer_tables(spec, snapshot, run, config, report);
    }

    const fs::path& dir = config.output_dir;
    write_output(dir, "report.txt", report.text, manifest);
    if (!report.researchers_csv.empty()) write_output(dir, "report_researchers.csv", report.researchers_csv, manifest);
    if (!report.groups_csv.empty()) write_output(dir, "report_units.csv", report.groups_csv, manifest);
    if (!report.sds_units_csv.empty()) write_output(dir, "report_sds_units.csv", report.sds_units_csv, manifest);
    if (!report.top_subset_csv.empty()) write_output(dir, "report_top_subset.csv", report.top_subset_csv, manifest);
    if (!report.top_performers_csv.empty()) {
      write_output(dir, "report_top_performers.csv", report.top_performers_csv, manifest);
    }
    RunManifest self = manifest;
    write_output(dir, "report_manifest.json", manifest.to_json(), self);

    for (const auto& w : manifest.warnings) io.err << "warning: " << w << '\n';
    io.out << fmt::format("report={} tables={}\n", (dir / "report.txt").string(),
                          manifest.outputs.size() - 1);
    return kExitOk;
  });
}

}  // namespace bibliorank::cli
