#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "bibliorank/corpus.hpp"

namespace bibliorank {

/// Normalization stratum: publications of one type and year in one ISI category.
struct BaselineKey {
  std::string category;
  int year = 0;
  DocType doc_type = DocType::article;

  friend auto operator<=>(const BaselineKey&, const BaselineKey&) = default;
  friend bool operator==(const BaselineKey&, const BaselineKey&) = default;
};

struct Baseline {
  BaselineKey key;
  double mean_citations = 0.0;
  std::int64_t citation_sum = 0;
  std::vector<std::int64_t> citation_values;  // ascending
  std::size_t n = 0;

  /// Publications in the stratum with strictly fewer citations.
  std::size_t count_below(std::int64_t citations) const;
  bool degenerate() const noexcept { return citation_sum == 0; }
};

class BaselineTable {
 public:
  using Map = std::map<BaselineKey, Baseline>;

  const Baseline* find(const BaselineKey& key) const;
  /// Throws Error{internal_consistency} when the key is absent.
  const Baseline& at(const BaselineKey& key) const;

  std::size_t size() const noexcept { return entries_.size(); }
  Map::const_iterator begin() const noexcept { return entries_.begin(); }
  Map::const_iterator end() const noexcept { return entries_.end(); }

  /// Strata in which every publication is uncited.
  std::vector<BaselineKey> degenerate_keys() const;

 private:
  friend BaselineTable build_baselines(const CorpusSnapshot& snapshot);
  Map entries_;
};

/// One baseline per (category, year, doc_type) present in the corpus. A
/// multi-category publication contributes to each of its categories.
BaselineTable build_baselines(const CorpusSnapshot& snapshot);

/// Publication Impact Index: citations over the stratum mean, averaged
/// across the publication's categories. 0 for uncited publications.
double pii(const Publication& publication, const BaselineTable& baselines);

/// Publication Impact Ranking on 0..100: share of the stratum with strictly
/// fewer citations, over (n - 1); singleton strata score 50. Averaged
/// across categories.
double pir(const Publication& publication, const BaselineTable& baselines);

struct PublicationScore {
  std::string pub_id;
  double pii = 0.0;
  double pir = 0.0;

  friend bool operator==(const PublicationScore&, const PublicationScore&) = default;
};

using ScoreMap = std::unordered_map<std::string, PublicationScore>;

ScoreMap score_publications(const CorpusSnapshot& snapshot, const BaselineTable& baselines);

/// Audit export: `category,year,doc_type,n,mean_citations`.
void write_baselines_csv(const BaselineTable& baselines, std::ostream& out);

}  // namespace bibliorank
