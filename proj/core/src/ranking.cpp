#include "bibliorank/ranking.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <set>

#include <fmt/format.h>

#include "bibliorank/csv.hpp"
#include "bibliorank/error.hpp"

namespace bibliorank {

std::string_view to_string(RankingMode mode) noexcept {
  return mode == RankingMode::by_sds ? "by_sds" : "by_sds_and_rank";
}

std::optional<RankingMode> parse_ranking_mode(std::string_view text) noexcept {
  if (text == "by_sds") return RankingMode::by_sds;
  if (text == "by_sds_and_rank") return RankingMode::by_sds_and_rank;
  return std::nullopt;
}

bool Stratum::contains(const Researcher& researcher) const noexcept {
  return researcher.sds == sds && (!rank || *rank == researcher.rank);
}

std::string Stratum::label() const {
  return rank ? fmt::format("{}|{}", sds, to_string(*rank)) : sds;
}

Stratum stratum_for(const Researcher& researcher, RankingMode mode) {
  Stratum s{researcher.sds, std::nullopt};
  if (mode == RankingMode::by_sds_and_rank) s.rank = researcher.rank;
  return s;
}

namespace {

// 100 * (number of strictly smaller entries) / (n - 1), after one sort.
template <class T>
std::vector<double> percentiles_of(std::span<const T> values) {
  const std::size_t n = values.size();
  std::vector<double> out(n, 50.0);
  if (n <= 1) return out;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

  const double denom = static_cast<double>(n - 1);
  std::size_t group_start = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0 && values[order[i - 1]] < values[order[i]]) group_start = i;
    out[order[i]] = 100.0 * static_cast<double>(group_start) / denom;
  }
  return out;
}

}  // namespace

// nullopt < any value, matching std::optional's ordering.
std::vector<double> strict_lower_percentiles(std::span<const std::optional<double>> values) {
  return percentiles_of(values);
}

std::vector<double> strict_lower_percentiles(std::span<const ExactValue> values) {
  return percentiles_of(values);
}

ExactValue ranking_key(const IndicatorVector& vector, Indicator indicator) {
  const auto& exact = vector.exact[static_cast<std::size_t>(indicator)];
  if (exact) return *exact;
  return ExactValue(ranking_key(vector.value(indicator)).value());
}

std::vector<PercentileVector> rank_stratum(std::span<const IndicatorVector> vectors, const Stratum& stratum,
                                           const CorpusSnapshot& snapshot) {
  if (vectors.empty()) throw Error(ErrorCode::domain, fmt::format("stratum {} is empty", stratum.label()));
  for (const auto& v : vectors) {
    const Researcher* r = snapshot.find_researcher(v.researcher_id);
    if (r == nullptr || !stratum.contains(*r)) {
      throw Error(ErrorCode::domain,
                  fmt::format("researcher '{}' is not in stratum {}", v.researcher_id, stratum.label()));
    }
  }

  std::vector<PercentileVector> out(vectors.size());
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    out[i].researcher_id = vectors[i].researcher_id;
    out[i].stratum = stratum;
    out[i].stratum_size = vectors.size();
  }
  std::vector<ExactValue> column(vectors.size());
  for (Indicator indicator : kAllIndicators) {
    for (std::size_t i = 0; i < vectors.size(); ++i) column[i] = ranking_key(vectors[i], indicator);
    const auto ranks = strict_lower_percentiles(column);
    for (std::size_t i = 0; i < vectors.size(); ++i) {
      out[i].percentile[static_cast<std::size_t>(indicator)] = ranks[i];
    }
  }
  return out;
}

PercentileMap rank_all(const IndicatorMap& indicators, const CorpusSnapshot& snapshot, RankingMode mode) {
  std::map<Stratum, std::vector<IndicatorVector>> strata;
  for (const auto& researcher : snapshot.researchers()) {
    auto it = indicators.find(researcher.researcher_id);
    if (it == indicators.end()) {
      throw Error(ErrorCode::internal_consistency,
                  fmt::format("no indicators for researcher '{}'", researcher.researcher_id));
    }
    auto& members = strata[stratum_for(researcher, mode)];
    // Duplicate registry ids resolve to one record; rank it once.
    if (!members.empty() && members.back().researcher_id == researcher.researcher_id) continue;
    members.push_back(it->second);
  }
  PercentileMap out;
  for (const auto& [stratum, members] : strata) {
    for (auto& pv : rank_stratum(members, stratum, snapshot)) {
      std::string id = pv.researcher_id;
      out.insert_or_assign(std::move(id), std::move(pv));
    }
  }
  return out;
}

std::vector<Stratum> singleton_strata(const PercentileMap& percentiles) {
  std::set<Stratum> found;
  for (const auto& [id, pv] : percentiles) {
    if (pv.stratum_size == 1) found.insert(pv.stratum);
  }
  return {found.begin(), found.end()};
}

void write_ranking_csv(const PercentileMap& percentiles, const IndicatorMap& indicators,
                       const CorpusSnapshot& snapshot, std::ostream& out) {
  out << "researcher_id,sds,rank,indicator,value,percentile,stratum_size\n";
  for (const auto& [id, pv] : percentiles) {
    const Researcher* r = snapshot.find_researcher(id);
    auto vec = indicators.find(id);
    if (r == nullptr || vec == indicators.end()) {
      throw Error(ErrorCode::internal_consistency, fmt::format("ranking row '{}' has no registry entry", id));
    }
    for (Indicator indicator : kAllIndicators) {
      const auto value = vec->second.value(indicator);
      out << csv::escape(id) << ',' << csv::escape(r->sds) << ',' << to_string(r->rank) << ','
          << to_string(indicator) << ',' << (value ? fmt::format("{:.4f}", *value) : std::string()) << ','
          << fmt::format("{:.4f}", pv.at(indicator)) << ',' << pv.stratum_size << '\n';
    }
  }
}

}  // namespace bibliorank
