#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "bibliorank/corpus.hpp"

namespace bibliorank {

inline constexpr int kSnapshotFormatVersion = 1;
inline constexpr std::string_view kSnapshotFormatName = "bibliorank-snapshot";
inline constexpr std::string_view kResearcherCsvHeader =
    "researcher_id,sds,rank,university,department,groups";

struct IngestOptions {
  YearWindow window{2004, 2006};
  CensusDate census_date = CensusDate::parse("2008-03-31");
  /// Abort the load when validate_snapshot reports anything.
  bool fatal_violations = true;
  /// Skip (and warn about) doc types other than article/review instead of failing.
  bool skip_unknown_types = false;
  ValidationOptions validation;
};

struct LoadResult {
  CorpusSnapshot snapshot;
  std::vector<std::string> warnings;
  ValidationReport report;
};

/// Parses JSON Lines publication records. Blank lines are ignored. Errors
/// carry the 1-based line number.
std::vector<Publication> parse_publications(std::istream& in, const IngestOptions& options,
                                            std::vector<std::string>& warnings);

/// Parses the registry CSV (header row required).
std::vector<Researcher> parse_researchers(std::istream& in);

LoadResult load_snapshot(const std::filesystem::path& publications_path,
                         const std::filesystem::path& researchers_path,
                         const IngestOptions& options);

/// Canonical snapshot document. Serialization is byte-deterministic.
std::string serialize_snapshot(const CorpusSnapshot& snapshot);
CorpusSnapshot deserialize_snapshot(std::string_view text);

void write_snapshot(const CorpusSnapshot& snapshot, const std::filesystem::path& path);
CorpusSnapshot read_snapshot(const std::filesystem::path& path);

/// Inverse of the parsers: the flat input files a snapshot was (or could
/// have been) loaded from.
void write_publications_jsonl(const CorpusSnapshot& snapshot, std::ostream& out);
void write_researchers_csv(const CorpusSnapshot& snapshot, std::ostream& out);

}  // namespace bibliorank
