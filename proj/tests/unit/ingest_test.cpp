#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "bibliorank/error.hpp"
#include "bibliorank/ingest.hpp"
#include "fixtures.hpp"

using namespace bibliorank;

namespace {

LoadResult load_tiny(const IngestOptions& options = {}) {
  return load_snapshot(test::data_path("tiny/publications.jsonl"), test::data_path("tiny/researchers.csv"), options);
}

}  // namespace

TEST(Ingest, TinyFixture) {
  const auto loaded = load_tiny();
  EXPECT_EQ(loaded.snapshot.publications().size(), 2u);
  EXPECT_EQ(loaded.snapshot.researchers().size(), 3u);
  EXPECT_TRUE(loaded.warnings.empty());
  const Researcher* r2 = loaded.snapshot.find_researcher("R2");
  ASSERT_NE(r2, nullptr);
  EXPECT_EQ(r2->rank, AcademicRank::associate);
  EXPECT_EQ(r2->groups, (std::vector<std::string>{"U01-BIO-G1", "U01-BIO-G2"}));
  EXPECT_FALSE(loaded.snapshot.find_researcher("R3")->department.has_value());
  const Publication* w1 = loaded.snapshot.find_publication("W1");
  ASSERT_NE(w1, nullptr);
  EXPECT_TRUE(w1->authors[1].is_external());
  EXPECT_EQ(w1->position_of("R2"), 2u);
}

TEST(Ingest, MalformedLineNumberReported) {
  std::ifstream in(test::data_path("malformed_line17.jsonl"));
  std::vector<std::string> warnings;
  try {
    parse_publications(in, {}, warnings);
    FAIL() << "expected a parse error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::parse);
    EXPECT_EQ(e.line(), 17u);
    EXPECT_NE(std::string(e.what()).find("line 17"), std::string::npos);
  }
}

TEST(Ingest, UnknownRankNamesTheRow) {
  std::ifstream in(test::data_path("bad_rank.csv"));
  try {
    parse_researchers(in);
    FAIL() << "expected a parse error";
  } catch (const Error& e) {
    EXPECT_EQ(e.line(), 3u);
    const std::string message = e.what();
    EXPECT_NE(message.find("professor"), std::string::npos);
    EXPECT_NE(message.find("R2"), std::string::npos);
  }
}

TEST(Ingest, UnknownDocTypeSkippedWhenAllowed) {
  IngestOptions options;
  options.skip_unknown_types = true;
  const auto loaded =
      load_snapshot(test::data_path("with_letter.jsonl"), test::data_path("tiny/researchers.csv"), options);
  EXPECT_EQ(loaded.snapshot.publications().size(), 2u);
  ASSERT_EQ(loaded.warnings.size(), 1u);
  EXPECT_NE(loaded.warnings[0].find("letter"), std::string::npos);
}

TEST(Ingest, UnknownDocTypeFailsByDefault) {
  EXPECT_THROW(load_snapshot(test::data_path("with_letter.jsonl"), test::data_path("tiny/researchers.csv"), {}),
               Error);
}

TEST(Ingest, StrictSdsIsFatal) {
  IngestOptions options;
  options.validation.known_sds = std::set<std::string>{"BIO/11"};
  try {
    load_tiny(options);
    FAIL() << "expected a validation error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::validation);
  }
  options.fatal_violations = false;
  EXPECT_EQ(load_tiny(options).report.count(ViolationKind::unknown_sds), 1u);
}

TEST(Ingest, RejectsNegativeCitationsAndPositionGaps) {
  std::vector<std::string> warnings;
  std::istringstream negative(
      R"({"pub_id":"W","year":2005,"doc_type":"article","categories":["C"],"citations":-1,)"
      R"("authors":[{"researcher_id":"R1","external":false,"position":1}]})");
  EXPECT_THROW(parse_publications(negative, {}, warnings), Error);
  std::istringstream gap(
      R"({"pub_id":"W","year":2005,"doc_type":"article","categories":["C"],"citations":1,)"
      R"("authors":[{"researcher_id":"R1","external":false,"position":2}]})");
  EXPECT_THROW(parse_publications(gap, {}, warnings), Error);
}

TEST(Ingest, ResearcherHeaderRequired) {
  std::istringstream in("id,sds\nR1,BIO/11\n");
  EXPECT_THROW(parse_researchers(in), Error);
}

TEST(Snapshot, RoundTrip) {
  const auto loaded = load_tiny();
  test::TempDir dir("snap");
  const auto path = dir.path() / "snapshot.json";
  write_snapshot(loaded.snapshot, path);
  const auto back = read_snapshot(path);
  EXPECT_EQ(back, loaded.snapshot);
  EXPECT_EQ(back.census_date().iso(), "2008-03-31");
  EXPECT_EQ(serialize_snapshot(back), serialize_snapshot(loaded.snapshot));
}

TEST(Snapshot, TruncatedFileIsFormatError) {
  const std::string text = serialize_snapshot(load_tiny().snapshot);
  try {
    deserialize_snapshot(text.substr(0, text.size() / 2));
    FAIL() << "expected a format error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::format);
  }
}

TEST(Snapshot, VersionMismatchRejected) {
  std::string text = serialize_snapshot(load_tiny().snapshot);
  const auto at = text.find("\"version\":1");
  ASSERT_NE(at, std::string::npos);
  text.replace(at, 11, "\"version\":99");
  EXPECT_THROW(deserialize_snapshot(text), Error);
}

TEST(Snapshot, FlatFilesReload) {
  const auto original = load_tiny().snapshot;
  test::TempDir dir("flat");
  {
    std::ofstream pubs(dir.path() / "p.jsonl");
    write_publications_jsonl(original, pubs);
    std::ofstream registry(dir.path() / "r.csv");
    write_researchers_csv(original, registry);
  }
  EXPECT_EQ(load_snapshot(dir.path() / "p.jsonl", dir.path() / "r.csv", {}).snapshot, original);
}
