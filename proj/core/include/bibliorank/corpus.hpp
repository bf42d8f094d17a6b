#pragma once

#include <chrono>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace bibliorank {

enum class DocType { article, review };
enum class AcademicRank { assistant, associate, full };

std::string_view to_string(DocType type) noexcept;
std::string_view to_string(AcademicRank rank) noexcept;
std::optional<DocType> parse_doc_type(std::string_view text) noexcept;
std::optional<AcademicRank> parse_academic_rank(std::string_view text) noexcept;

/// One slot in a publication's ordered author list. External (non-registry)
/// co-authors keep their slot so the true author count and positions are
/// available for fractional counting, but they never receive credit.
struct Author {
  std::optional<std::string> researcher_id;

  static Author registry(std::string id) { return Author{std::move(id)}; }
  static Author external() { return Author{}; }
  bool is_external() const noexcept { return !researcher_id.has_value(); }

  friend bool operator==(const Author&, const Author&) = default;
};

struct Publication {
  std::string pub_id;
  int year = 0;
  DocType doc_type = DocType::article;
  std::vector<std::string> categories;
  std::int64_t citations = 0;  // at census date, self-citations included
  std::vector<Author> authors;  // position p is authors[p - 1]

  std::size_t author_count() const noexcept { return authors.size(); }
  /// Zero-based slot of a registry author, if present.
  std::optional<std::size_t> position_of(std::string_view researcher_id) const noexcept;

  friend bool operator==(const Publication&, const Publication&) = default;
};

struct Researcher {
  std::string researcher_id;
  std::string sds;
  AcademicRank rank = AcademicRank::assistant;
  std::string university;
  std::optional<std::string> department;
  std::vector<std::string> groups;  // sorted, unique

  friend bool operator==(const Researcher&, const Researcher&) = default;
};

struct YearWindow {
  int start = 0;
  int end = 0;

  bool contains(int year) const noexcept { return year >= start && year <= end; }
  int years() const noexcept { return end - start + 1; }

  friend bool operator==(const YearWindow&, const YearWindow&) = default;
};

/// Date at which citation counts were frozen.
class CensusDate {
 public:
  CensusDate() = default;
  explicit CensusDate(std::chrono::year_month_day ymd);

  /// Parses YYYY-MM-DD; throws Error{parse} on anything else.
  static CensusDate parse(std::string_view iso);

  std::chrono::year_month_day ymd() const noexcept { return ymd_; }
  std::string iso() const;

  friend bool operator==(const CensusDate&, const CensusDate&) = default;

 private:
  std::chrono::year_month_day ymd_{std::chrono::year{1970}, std::chrono::month{1},
                                   std::chrono::day{1}};
};

/// Immutable view of a publication corpus plus researcher registry. Records
/// are kept in canonical order (by id) so that any permutation of the same
/// input builds an equal snapshot. Duplicated ids are retained so that
/// validate_snapshot can report them; lookups resolve to the first record.
class CorpusSnapshot {
 public:
  CorpusSnapshot() = default;
  CorpusSnapshot(std::vector<Publication> publications, std::vector<Researcher> researchers,
                 CensusDate census_date, YearWindow window);

  std::span<const Publication> publications() const noexcept { return publications_; }
  std::span<const Researcher> researchers() const noexcept { return researchers_; }
  const CensusDate& census_date() const noexcept { return census_date_; }
  const YearWindow& window() const noexcept { return window_; }

  const Researcher* find_researcher(std::string_view researcher_id) const;
  const Publication* find_publication(std::string_view pub_id) const;

  /// Indices into publications() of every publication listing the
  /// researcher, ordered by (year, pub_id). Throws Error{not_found}.
  std::span<const std::size_t> authored_indices(std::string_view researcher_id) const;

  bool empty() const noexcept { return publications_.empty() && researchers_.empty(); }

  friend bool operator==(const CorpusSnapshot& a, const CorpusSnapshot& b) {
    return a.census_date_ == b.census_date_ && a.window_ == b.window_ &&
           a.publications_ == b.publications_ && a.researchers_ == b.researchers_;
  }

 private:
  struct StringHash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const noexcept {
      return std::hash<std::string_view>{}(s);
    }
  };
  using Index = std::unordered_map<std::string, std::size_t, StringHash, std::equal_to<>>;

  std::vector<Publication> publications_;
  std::vector<Researcher> researchers_;
  CensusDate census_date_;
  YearWindow window_;
  Index publication_index_;
  Index researcher_index_;
  std::vector<std::vector<std::size_t>> authored_;  // parallel to researchers_
};

enum class ViolationKind {
  dangling_author,
  duplicate_publication_id,
  duplicate_researcher_id,
  duplicate_author,
  duplicate_category,
  year_out_of_window,
  empty_categories,
  empty_authors,
  negative_citations,
  unknown_sds,
};

std::string_view to_string(ViolationKind kind) noexcept;

struct Violation {
  ViolationKind kind;
  std::string subject;  // pub_id or researcher_id
  std::string detail;

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct ValidationOptions {
  /// When set, researchers whose SDS is not listed are reported.
  std::optional<std::set<std::string>> known_sds;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const noexcept { return violations.empty(); }
  std::size_t count(ViolationKind kind) const noexcept;
};

ValidationReport validate_snapshot(const CorpusSnapshot& snapshot,
                                   const ValidationOptions& options = {});

/// Every publication listing `researcher_id`, ordered by (year, pub_id).
/// Throws Error{not_found} for ids outside the registry.
std::vector<std::reference_wrapper<const Publication>> publications_of(
    const CorpusSnapshot& snapshot, std::string_view researcher_id);

}  // namespace bibliorank
