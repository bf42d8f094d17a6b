#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "bibliorank/ingest.hpp"
#include "bibliorank/manifest.hpp"
#include "bibliorank/synth.hpp"
#include "commands.hpp"
#include "fixtures.hpp"

using namespace bibliorank;
namespace fs = std::filesystem;

namespace {

struct Captured {
  int code = -1;
  std::string out;
  std::string err;
};

template <class Fn>
Captured capture(Fn&& fn) {
  std::ostringstream out, err;
  Captured c;
  c.code = fn(cli::Streams{out, err});
  c.out = out.str();
  c.err = err.str();
  return c;
}

Captured ingest(const fs::path& pubs, const fs::path& researchers, const fs::path& dir,
                cli::ConfigOverrides overrides = {}) {
  cli::IngestArgs args;
  args.publications = pubs;
  args.researchers = researchers;
  overrides.output_dir = dir;
  args.overrides = overrides;
  return capture([&](cli::Streams io) { return cli::run_ingest(args, io); });
}

Captured score(const fs::path& snapshot, const fs::path& dir, cli::ConfigOverrides overrides = {}) {
  cli::ScoreArgs args;
  args.snapshot = snapshot;
  overrides.output_dir = dir;
  args.overrides = overrides;
  return capture([&](cli::Streams io) { return cli::run_score(args, io); });
}

std::vector<std::vector<std::string>> csv_rows(const fs::path& path) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(test::read_file(path));
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> fields;
    std::stringstream parts(line);
    std::string field;
    while (std::getline(parts, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    rows.push_back(fields);
  }
  return rows;
}

}  // namespace

TEST(CliIngest, SummaryLine) {
  test::TempDir dir("ingest");
  const auto r = ingest(test::data_path("tiny/publications.jsonl"), test::data_path("tiny/researchers.csv"), dir.path());
  EXPECT_EQ(r.code, cli::kExitOk);
  EXPECT_EQ(r.out, "researchers=3 publications=2 warnings=0\n");
  EXPECT_TRUE(fs::exists(dir.path() / "snapshot.json"));
}

TEST(CliIngest, MalformedLineIsMachineReadable) {
  test::TempDir dir("ingest");
  const auto r = ingest(test::data_path("malformed_line17.jsonl"), test::data_path("tiny/researchers.csv"), dir.path());
  EXPECT_NE(r.code, 0);
  const auto record = nlohmann::json::parse(r.err);
  EXPECT_EQ(record.at("error"), "parse");
  EXPECT_EQ(record.at("line"), 17);
  EXPECT_FALSE(fs::exists(dir.path() / "snapshot.json"));
}

TEST(CliIngest, StrictSdsRejectsUnknownCode) {
  test::TempDir dir("ingest");
  cli::ConfigOverrides o;
  o.strict_sds = true;
  o.known_sds = "BIO/11";
  const auto r = ingest(test::data_path("tiny/publications.jsonl"), test::data_path("tiny/researchers.csv"),
                        dir.path(), o);
  EXPECT_NE(r.code, 0);
  EXPECT_EQ(nlohmann::json::parse(r.err).at("error"), "validation");
}

TEST(CliIngest, SkippedTypesCountAsWarnings) {
  test::TempDir dir("ingest");
  cli::ConfigOverrides o;
  o.skip_unknown_types = true;
  const auto r = ingest(test::data_path("with_letter.jsonl"), test::data_path("tiny/researchers.csv"), dir.path(), o);
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "researchers=3 publications=2 warnings=1\n");
}

TEST(CliScore, ByteIdenticalReruns) {
  test::TempDir dir("score");
  const auto snapshot = dir.path() / "snapshot.json";
  write_snapshot(synth::generate(synth::random_small_config(5)), snapshot);
  const auto out = dir.path() / "run";
  ASSERT_EQ(score(snapshot, out).code, 0);
  std::map<std::string, std::string> first;
  for (const auto& entry : fs::directory_iterator(out)) first[entry.path().filename()] = test::read_file(entry.path());
  ASSERT_EQ(score(snapshot, out).code, 0);
  for (const auto& [name, bytes] : first) EXPECT_EQ(test::read_file(out / name), bytes) << name;
  EXPECT_EQ(first.size(), 5u);
  const auto manifest = RunManifest::from_json(first.at("manifest.json"));
  EXPECT_EQ(manifest.snapshot_sha256, sha256_file(snapshot));
  EXPECT_EQ(manifest.outputs.at("indicators.csv"), sha256_hex(first.at("indicators.csv")));
}

TEST(CliScore, EmptySnapshotWarnsAndSucceeds) {
  test::TempDir dir("score");
  const auto snapshot = dir.path() / "empty.json";
  write_snapshot(test::snapshot({}, {}), snapshot);
  const auto r = score(snapshot, dir.path() / "run");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.err.find("warning"), std::string::npos);
  EXPECT_EQ(csv_rows(dir.path() / "run" / "indicators.csv").size(), 1u);
  EXPECT_EQ(csv_rows(dir.path() / "run" / "percentiles.csv").size(), 1u);
}

TEST(CliScore, RankModeChangesPercentilesNotValues) {
  test::TempDir dir("score");
  const auto snapshot = dir.path() / "snapshot.json";
  auto config = synth::random_small_config(8);
  config.rank_fertility = {0.5, 1.0, 2.0};
  write_snapshot(synth::generate(config), snapshot);
  cli::ConfigOverrides by_sds, by_rank;
  by_sds.ranking_mode = "by_sds";
  by_rank.ranking_mode = "by_sds_and_rank";
  ASSERT_EQ(score(snapshot, dir.path() / "a", by_sds).code, 0);
  ASSERT_EQ(score(snapshot, dir.path() / "b", by_rank).code, 0);
  EXPECT_EQ(test::read_file(dir.path() / "a" / "indicators.csv"), test::read_file(dir.path() / "b" / "indicators.csv"));
  EXPECT_NE(test::read_file(dir.path() / "a" / "percentiles.csv"),
            test::read_file(dir.path() / "b" / "percentiles.csv"));
}

TEST(CliScore, MissingSnapshotFails) {
  test::TempDir dir("score");
  const auto r = score(dir.path() / "nope.json", dir.path() / "run");
  EXPECT_EQ(r.code, cli::kExitBadInput);
  EXPECT_EQ(nlohmann::json::parse(r.err).at("error"), "io");
}

namespace {

// A scored run where R1 is alone in department D1.
fs::path scored_run(const test::TempDir& dir) {
  std::vector<Researcher> people;
  std::vector<Publication> pubs;
  for (int i = 1; i <= 6; ++i) {
    const std::string id = "R" + std::to_string(i);
    auto r = test::researcher(id, "BIO/11", AcademicRank::full, "U01", {"G" + std::to_string(i % 2)});
    r.department = i == 1 ? "D1" : "D2";
    people.push_back(r);
    for (int k = 0; k < i % 4 + 1; ++k) pubs.push_back(test::pub(id + "-" + std::to_string(k), (i * 7 + k) % 11, {id, ""}));
  }
  const auto snapshot = dir.path() / "snapshot.json";
  write_snapshot(test::snapshot(pubs, people), snapshot);
  cli::ConfigOverrides o;
  o.config_file = test::data_path("run.ini");
  EXPECT_EQ(score(snapshot, dir.path() / "run", o).code, 0);
  return dir.path() / "run";
}

// Every report section, with departments matching scored_run.
fs::path full_spec(const test::TempDir& dir) {
  const auto spec = dir.path() / "units_full.json";
  std::ofstream(spec) << R"({"researcher_tables": [{"title": "BIO/11", "sds": "BIO/11"}], "groups": "all",
    "departments": ["D1", "D2"], "sds_units": "all", "top_performers": ["p", "qi_pii"]})";
  return spec;
}

}  // namespace

TEST(CliReport, SingleMemberDepartmentEqualsResearcherRow) {
  test::TempDir dir("report");
  const auto run = scored_run(dir);
  const auto spec = dir.path() / "units.json";
  std::ofstream(spec) << R"({"researcher_tables": [{"title": "one", "researchers": ["R1"]}], "departments": ["D1"]})";
  cli::ReportArgs args;
  args.run_dir = run;
  args.unit_spec = spec;
  const auto r = capture([&](cli::Streams io) { return cli::run_report(args, io); });
  ASSERT_EQ(r.code, 0) << r.err;

  const auto researchers = csv_rows(run / "report_researchers.csv");
  const auto units = csv_rows(run / "report_units.csv");
  ASSERT_EQ(researchers.size(), 2u);
  ASSERT_EQ(units.size(), 2u);
  // researcher row: table,id,sds,rank, 8 values, 8 percentiles, composite
  // unit row: kind,unit,members,sds_count, 8 percentiles, composite
  const std::vector<std::string> from_researcher(researchers[1].begin() + 12, researchers[1].end());
  const std::vector<std::string> from_unit(units[1].begin() + 4, units[1].end());
  EXPECT_EQ(from_researcher, from_unit);
}

TEST(CliReport, CompositeOfPOnlyEqualsPPercentile) {
  test::TempDir dir("report");
  const auto run = scored_run(dir);
  cli::ReportArgs args;
  args.run_dir = run;
  args.unit_spec = full_spec(dir);
  args.overrides.ranking_mode = "by_sds";
  const auto r = capture([&](cli::Streams io) { return cli::run_report(args, io); });
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = csv_rows(run / "report_researchers.csv");
  ASSERT_EQ(rows.front().back(), "composite");
  ASSERT_EQ(rows.front()[12], "p_percentile");
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_EQ(rows[i].back(), rows[i][12]);

  const std::string text = test::read_file(run / "report.txt");
  EXPECT_NE(text.find("SS^PII"), std::string::npos);
  EXPECT_NE(text.find("per staff member per year"), std::string::npos);
  EXPECT_TRUE(fs::exists(run / "report_top_performers.csv"));
  EXPECT_TRUE(fs::exists(run / "report_top_subset.csv"));
}

TEST(CliReport, ColumnOrderFollowsIndicatorOrder) {
  test::TempDir dir("report");
  const auto run = scored_run(dir);
  cli::ReportArgs args;
  args.run_dir = run;
  args.unit_spec = full_spec(dir);
  ASSERT_EQ(capture([&](cli::Streams io) { return cli::run_report(args, io); }).code, 0);
  const auto header = csv_rows(run / "report_researchers.csv").front();
  const std::vector<std::string> values(header.begin() + 4, header.begin() + 12);
  EXPECT_EQ(values, (std::vector<std::string>{"p", "fp", "ss_pii", "fss_pii", "ss_pir", "fss_pir", "qi_pii", "qi_pir"}));
}

TEST(CliReport, ChangedSnapshotRefused) {
  test::TempDir dir("report");
  const auto run = scored_run(dir);
  std::ofstream(dir.path() / "snapshot.json", std::ios::app) << " ";
  cli::ReportArgs args;
  args.run_dir = run;
  const auto r = capture([&](cli::Streams io) { return cli::run_report(args, io); });
  EXPECT_NE(r.code, 0);
  EXPECT_EQ(nlohmann::json::parse(r.err).at("error"), "validation");
}

TEST(CliSynth, WritesIngestibleFiles) {
  test::TempDir dir("synth");
  cli::SynthArgs args;
  args.seed = 6;
  args.output_dir = dir.path() / "corpus";
  ASSERT_EQ(capture([&](cli::Streams io) { return cli::run_synth(args, io); }).code, 0);
  const auto r = ingest(args.output_dir / "publications.jsonl", args.output_dir / "researchers.csv", dir.path() / "run");
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(read_snapshot(dir.path() / "run" / "snapshot.json"), synth::generate(synth::random_small_config(6)));
}

TEST(CliOracleCheck, RandomCorporaMatch) {
  cli::OracleCheckArgs args;
  args.corpora = 3;
  const auto r = capture([&](cli::Streams io) { return cli::run_oracle_check(args, io); });
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("6 of 6 checks matched"), std::string::npos);
}

TEST(CliReport, DefaultSelectionHasOneTablePerSds) {
  test::TempDir dir("report");
  const auto run = scored_run(dir);
  cli::ReportArgs args;
  args.run_dir = run;
  ASSERT_EQ(capture([&](cli::Streams io) { return cli::run_report(args, io); }).code, 0);
  const auto rows = csv_rows(run / "report_researchers.csv");
  ASSERT_EQ(rows.size(), 7u);
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_EQ(rows[i][0], "BIO/11");
  EXPECT_TRUE(fs::exists(run / "report_units.csv"));
  EXPECT_TRUE(fs::exists(run / "report_sds_units.csv"));
}
