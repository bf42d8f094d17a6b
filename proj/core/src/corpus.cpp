#include "bibliorank/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <unordered_set>

#include <fmt/format.h>

#include "bibliorank/error.hpp"

namespace bibliorank {

std::string_view to_string(DocType type) noexcept {
  return type == DocType::article ? "article" : "review";
}

std::string_view to_string(AcademicRank rank) noexcept {
  switch (rank) {
    case AcademicRank::assistant: return "assistant";
    case AcademicRank::associate: return "associate";
    case AcademicRank::full: return "full";
  }
  return "assistant";
}

std::optional<DocType> parse_doc_type(std::string_view text) noexcept {
  if (text == "article") return DocType::article;
  if (text == "review") return DocType::review;
  return std::nullopt;
}

std::optional<AcademicRank> parse_academic_rank(std::string_view text) noexcept {
  if (text == "assistant") return AcademicRank::assistant;
  if (text == "associate") return AcademicRank::associate;
  if (text == "full") return AcademicRank::full;
  return std::nullopt;
}

std::optional<std::size_t> Publication::position_of(std::string_view researcher_id) const noexcept {
  for (std::size_t i = 0; i < authors.size(); ++i) {
    if (authors[i].researcher_id && *authors[i].researcher_id == researcher_id) return i;
  }
  return std::nullopt;
}

CensusDate::CensusDate(std::chrono::year_month_day ymd) : ymd_(ymd) {
  if (!ymd_.ok()) throw Error(ErrorCode::parse, "invalid census date");
}

CensusDate CensusDate::parse(std::string_view iso) {
  auto field = [&](std::size_t pos, std::size_t len) {
    int value = 0;
    const char* first = iso.data() + pos;
    const char* last = first + len;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) {
      throw Error(ErrorCode::parse, fmt::format("census date '{}' is not YYYY-MM-DD", iso));
    }
    return value;
  };
  if (iso.size() != 10 || iso[4] != '-' || iso[7] != '-') {
    throw Error(ErrorCode::parse, fmt::format("census date '{}' is not YYYY-MM-DD", iso));
  }
  std::chrono::year_month_day ymd{std::chrono::year{field(0, 4)},
                                  std::chrono::month{static_cast<unsigned>(field(5, 2))},
                                  std::chrono::day{static_cast<unsigned>(field(8, 2))}};
  if (!ymd.ok()) throw Error(ErrorCode::parse, fmt::format("census date '{}' does not exist", iso));
  return CensusDate(ymd);
}

std::string CensusDate::iso() const {
  return fmt::format("{:04d}-{:02d}-{:02d}", static_cast<int>(ymd_.year()),
                     static_cast<unsigned>(ymd_.month()), static_cast<unsigned>(ymd_.day()));
}

CorpusSnapshot::CorpusSnapshot(std::vector<Publication> publications,
                               std::vector<Researcher> researchers, CensusDate census_date,
                               YearWindow window)
    : publications_(std::move(publications)),
      researchers_(std::move(researchers)),
      census_date_(census_date),
      window_(window) {
  // Full-record tie-break keeps duplicate ids in a deterministic order too.
  std::sort(publications_.begin(), publications_.end(), [](const auto& a, const auto& b) {
    if (a.pub_id != b.pub_id) return a.pub_id < b.pub_id;
    if (a.year != b.year) return a.year < b.year;
    if (a.citations != b.citations) return a.citations < b.citations;
    return a.categories < b.categories;
  });
  std::sort(researchers_.begin(), researchers_.end(), [](const auto& a, const auto& b) {
    if (a.researcher_id != b.researcher_id) return a.researcher_id < b.researcher_id;
    if (a.sds != b.sds) return a.sds < b.sds;
    return a.university < b.university;
  });
  for (auto& r : researchers_) {
    std::sort(r.groups.begin(), r.groups.end());
    r.groups.erase(std::unique(r.groups.begin(), r.groups.end()), r.groups.end());
  }

  publication_index_.reserve(publications_.size());
  for (std::size_t i = 0; i < publications_.size(); ++i) {
    publication_index_.try_emplace(publications_[i].pub_id, i);
  }
  researcher_index_.reserve(researchers_.size());
  for (std::size_t i = 0; i < researchers_.size(); ++i) {
    researcher_index_.try_emplace(researchers_[i].researcher_id, i);
  }

  authored_.resize(researchers_.size());
  for (std::size_t p = 0; p < publications_.size(); ++p) {
    for (const auto& author : publications_[p].authors) {
      if (author.is_external()) continue;
      auto it = researcher_index_.find(*author.researcher_id);
      if (it == researcher_index_.end()) continue;
      auto& list = authored_[it->second];
      // A repeated author on one paper is a validation error; index it once.
      if (list.empty() || list.back() != p) list.push_back(p);
    }
  }
  for (auto& list : authored_) {
    std::sort(list.begin(), list.end(), [this](std::size_t a, std::size_t b) {
      const auto& pa = publications_[a];
      const auto& pb = publications_[b];
      if (pa.year != pb.year) return pa.year < pb.year;
      return a < b;  // index order is pub_id order
    });
  }
}

const Researcher* CorpusSnapshot::find_researcher(std::string_view researcher_id) const {
  auto it = researcher_index_.find(researcher_id);
  return it == researcher_index_.end() ? nullptr : &researchers_[it->second];
}

const Publication* CorpusSnapshot::find_publication(std::string_view pub_id) const {
  auto it = publication_index_.find(pub_id);
  return it == publication_index_.end() ? nullptr : &publications_[it->second];
}

std::span<const std::size_t> CorpusSnapshot::authored_indices(std::string_view researcher_id) const {
  auto it = researcher_index_.find(researcher_id);
  if (it == researcher_index_.end()) {
    throw Error(ErrorCode::not_found, fmt::format("unknown researcher '{}'", researcher_id));
  }
  return authored_[it->second];
}

std::string_view to_string(ViolationKind kind) noexcept {
  switch (kind) {
    case ViolationKind::dangling_author: return "dangling_author";
    case ViolationKind::duplicate_publication_id: return "duplicate_publication_id";
    case ViolationKind::duplicate_researcher_id: return "duplicate_researcher_id";
    case ViolationKind::duplicate_author: return "duplicate_author";
    case ViolationKind::duplicate_category: return "duplicate_category";
    case ViolationKind::year_out_of_window: return "year_out_of_window";
    case ViolationKind::empty_categories: return "empty_categories";
    case ViolationKind::empty_authors: return "empty_authors";
    case ViolationKind::negative_citations: return "negative_citations";
    case ViolationKind::unknown_sds: return "unknown_sds";
  }
  return "unknown";
}

std::size_t ValidationReport::count(ViolationKind kind) const noexcept {
  return static_cast<std::size_t>(std::count_if(
      violations.begin(), violations.end(), [kind](const Violation& v) { return v.kind == kind; }));
}

ValidationReport validate_snapshot(const CorpusSnapshot& snapshot, const ValidationOptions& options) {
  ValidationReport report;
  auto add = [&](ViolationKind kind, const std::string& subject, std::string detail) {
    report.violations.push_back(Violation{kind, subject, std::move(detail)});
  };

  const auto researchers = snapshot.researchers();
  for (std::size_t i = 1; i < researchers.size(); ++i) {
    if (researchers[i].researcher_id == researchers[i - 1].researcher_id) {
      add(ViolationKind::duplicate_researcher_id, researchers[i].researcher_id,
          "researcher id appears more than once");
    }
  }
  if (options.known_sds) {
    for (const auto& r : researchers) {
      if (!options.known_sds->contains(r.sds)) {
        add(ViolationKind::unknown_sds, r.researcher_id, fmt::format("unknown SDS '{}'", r.sds));
      }
    }
  }

  const auto publications = snapshot.publications();
  const auto& window = snapshot.window();
  for (std::size_t i = 0; i < publications.size(); ++i) {
    const auto& pub = publications[i];
    if (i > 0 && pub.pub_id == publications[i - 1].pub_id) {
      add(ViolationKind::duplicate_publication_id, pub.pub_id, "publication id appears more than once");
    }
    if (!window.contains(pub.year)) {
      add(ViolationKind::year_out_of_window, pub.pub_id,
          fmt::format("year {} outside window {}-{}", pub.year, window.start, window.end));
    }
    if (pub.categories.empty()) {
      add(ViolationKind::empty_categories, pub.pub_id, "no ISI categories");
    } else {
      std::vector<std::string_view> cats(pub.categories.begin(), pub.categories.end());
      std::sort(cats.begin(), cats.end());
      if (std::adjacent_find(cats.begin(), cats.end()) != cats.end()) {
        add(ViolationKind::duplicate_category, pub.pub_id, "category listed more than once");
      }
    }
    if (pub.citations < 0) {
      add(ViolationKind::negative_citations, pub.pub_id, fmt::format("citations = {}", pub.citations));
    }
    if (pub.authors.empty()) {
      add(ViolationKind::empty_authors, pub.pub_id, "no authors");
    }
    std::unordered_set<std::string_view> seen;
    for (const auto& author : pub.authors) {
      if (author.is_external()) continue;
      const std::string& id = *author.researcher_id;
      if (!seen.insert(id).second) {
        add(ViolationKind::duplicate_author, pub.pub_id, fmt::format("author '{}' listed twice", id));
      }
      if (snapshot.find_researcher(id) == nullptr) {
        add(ViolationKind::dangling_author, pub.pub_id,
            fmt::format("author '{}' is not in the registry", id));
      }
    }
  }
  return report;
}

std::vector<std::reference_wrapper<const Publication>> publications_of(
    const CorpusSnapshot& snapshot, std::string_view researcher_id) {
  std::vector<std::reference_wrapper<const Publication>> out;
  const auto pubs = snapshot.publications();
  for (std::size_t index : snapshot.authored_indices(researcher_id)) out.emplace_back(pubs[index]);
  return out;
}

}  // namespace bibliorank
