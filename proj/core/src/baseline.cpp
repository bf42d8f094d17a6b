#include "bibliorank/baseline.hpp"

#include <algorithm>
#include <ostream>

#include <fmt/format.h>

#include "bibliorank/csv.hpp"
#include "bibliorank/error.hpp"
#include "bibliorank/exact_sum.hpp"

namespace bibliorank {

std::size_t Baseline::count_below(std::int64_t citations) const {
  return static_cast<std::size_t>(
      std::lower_bound(citation_values.begin(), citation_values.end(), citations) -
      citation_values.begin());
}

const Baseline* BaselineTable::find(const BaselineKey& key) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : &it->second;
}

const Baseline& BaselineTable::at(const BaselineKey& key) const {
  if (const Baseline* b = find(key)) return *b;
  throw Error(ErrorCode::internal_consistency,
              fmt::format("no baseline for ({}, {}, {})", key.category, key.year, to_string(key.doc_type)));
}

std::vector<BaselineKey> BaselineTable::degenerate_keys() const {
  std::vector<BaselineKey> out;
  for (const auto& [key, baseline] : entries_) {
    if (baseline.degenerate()) out.push_back(key);
  }
  return out;
}

BaselineTable build_baselines(const CorpusSnapshot& snapshot) {
  BaselineTable table;
  for (const auto& pub : snapshot.publications()) {
    for (const auto& category : pub.categories) {
      auto [it, inserted] = table.entries_.try_emplace(BaselineKey{category, pub.year, pub.doc_type});
      Baseline& b = it->second;
      if (inserted) b.key = it->first;
      b.citation_values.push_back(pub.citations);
      b.citation_sum += pub.citations;
    }
  }
  for (auto& [key, b] : table.entries_) {
    std::sort(b.citation_values.begin(), b.citation_values.end());
    b.n = b.citation_values.size();
    b.mean_citations = static_cast<double>(b.citation_sum) / static_cast<double>(b.n);
  }
  return table;
}

namespace {

// citations / (sum / n) as a single correctly rounded division, so scaling
// every count in a stratum by k leaves the ratio bit-identical.
double impact_ratio(std::int64_t citations, const Baseline& b) {
  if (citations == 0) return 0.0;
  if (b.citation_sum == 0) {
    throw Error(ErrorCode::degenerate_baseline,
                fmt::format("stratum ({}, {}, {}) has zero mean but a cited publication",
                            b.key.category, b.key.year, to_string(b.key.doc_type)));
  }
  return static_cast<double>(citations * static_cast<std::int64_t>(b.n)) /
         static_cast<double>(b.citation_sum);
}

double rank_percentile(std::int64_t citations, const Baseline& b) {
  if (b.n <= 1) return 50.0;
  return 100.0 * static_cast<double>(b.count_below(citations)) / static_cast<double>(b.n - 1);
}

template <class PerCategory>
double mean_over_categories(const Publication& pub, const BaselineTable& baselines, PerCategory&& per) {
  if (pub.categories.empty()) {
    throw Error(ErrorCode::internal_consistency, fmt::format("'{}' has no categories", pub.pub_id));
  }
  const Baseline& first = baselines.at(BaselineKey{pub.categories.front(), pub.year, pub.doc_type});
  if (pub.categories.size() == 1) return per(first);
  ExactSum sum;
  sum.add(per(first));
  for (std::size_t i = 1; i < pub.categories.size(); ++i) {
    sum.add(per(baselines.at(BaselineKey{pub.categories[i], pub.year, pub.doc_type})));
  }
  return sum.value() / static_cast<double>(pub.categories.size());
}

}  // namespace

double pii(const Publication& publication, const BaselineTable& baselines) {
  return mean_over_categories(publication, baselines,
                              [&](const Baseline& b) { return impact_ratio(publication.citations, b); });
}

double pir(const Publication& publication, const BaselineTable& baselines) {
  return mean_over_categories(publication, baselines,
                              [&](const Baseline& b) { return rank_percentile(publication.citations, b); });
}

ScoreMap score_publications(const CorpusSnapshot& snapshot, const BaselineTable& baselines) {
  ScoreMap scores;
  scores.reserve(snapshot.publications().size());
  for (const auto& pub : snapshot.publications()) {
    scores.try_emplace(pub.pub_id, PublicationScore{pub.pub_id, pii(pub, baselines), pir(pub, baselines)});
  }
  return scores;
}

void write_baselines_csv(const BaselineTable& baselines, std::ostream& out) {
  out << "category,year,doc_type,n,mean_citations\n";
  for (const auto& [key, b] : baselines) {
    out << csv::escape(key.category) << ',' << key.year << ',' << to_string(key.doc_type) << ',' << b.n
        << ',' << fmt::format("{:.4f}", b.mean_citations) << '\n';
  }
}

}  // namespace bibliorank
