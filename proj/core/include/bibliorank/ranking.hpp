#pragma once

#include <compare>
#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bibliorank/corpus.hpp"
#include "bibliorank/indicators.hpp"

namespace bibliorank {

enum class RankingMode { by_sds, by_sds_and_rank };

std::string_view to_string(RankingMode mode) noexcept;
std::optional<RankingMode> parse_ranking_mode(std::string_view text) noexcept;

/// Comparison population for researcher percentiles: an SDS, optionally
/// restricted to one academic rank.
struct Stratum {
  std::string sds;
  std::optional<AcademicRank> rank;

  bool contains(const Researcher& researcher) const noexcept;
  std::string label() const;

  friend auto operator<=>(const Stratum&, const Stratum&) = default;
  friend bool operator==(const Stratum&, const Stratum&) = default;
};

Stratum stratum_for(const Researcher& researcher, RankingMode mode);

struct PercentileVector {
  std::string researcher_id;
  Stratum stratum;
  std::size_t stratum_size = 0;
  PerIndicator<double> percentile{};

  double at(Indicator indicator) const noexcept {
    return percentile[static_cast<std::size_t>(indicator)];
  }

  friend bool operator==(const PercentileVector&, const PercentileVector&) = default;
};

using PercentileMap = std::map<std::string, PercentileVector>;

/// 100 * |{j : v_j < v_i}| / (N - 1) for each entry; 50 when N == 1.
/// Undefined values sort below every defined value and tie with each other.
std::vector<double> strict_lower_percentiles(std::span<const std::optional<double>> values);

/// Value used for ranking: an undefined QI (no publications) ties with a QI
/// of 0 at the bottom of the stratum, so silence and uncited output both
/// rank 0 while every positive QI ranks above them.
inline std::optional<double> ranking_key(const std::optional<double>& value) noexcept {
  return value.has_value() ? value : std::optional<double>(0.0);
}

/// Exact-value form of strict_lower_percentiles.
std::vector<double> strict_lower_percentiles(std::span<const ExactValue> values);

/// Ranking key of one indicator: the exact value when the vector carries it,
/// otherwise the rounded value, with undefined QI ranked as 0.
ExactValue ranking_key(const IndicatorVector& vector, Indicator indicator);

/// Ranks the members of one stratum on all eight indicators. Throws
/// Error{domain} for a vector whose researcher is not a stratum member, and
/// for an empty stratum.
std::vector<PercentileVector> rank_stratum(std::span<const IndicatorVector> vectors, const Stratum& stratum,
                                           const CorpusSnapshot& snapshot);

/// Partitions the registry by stratum and ranks every partition. Every
/// registry researcher must have an indicator vector.
PercentileMap rank_all(const IndicatorMap& indicators, const CorpusSnapshot& snapshot, RankingMode mode);

/// Strata with a single member (their percentiles are the uninformative 50).
std::vector<Stratum> singleton_strata(const PercentileMap& percentiles);

/// Long-form export: `researcher_id,sds,rank,indicator,value,percentile,stratum_size`.
void write_ranking_csv(const PercentileMap& percentiles, const IndicatorMap& indicators,
                       const CorpusSnapshot& snapshot, std::ostream& out);

}  // namespace bibliorank
