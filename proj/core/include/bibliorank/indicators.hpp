#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bibliorank/baseline.hpp"
#include "bibliorank/corpus.hpp"
#include "bibliorank/exact_sum.hpp"

namespace bibliorank {

/// The eight researcher-level indicators, in report column order.
enum class Indicator : std::size_t { p, fp, ss_pii, fss_pii, ss_pir, fss_pir, qi_pii, qi_pir };

inline constexpr std::size_t kIndicatorCount = 8;
inline constexpr std::array<Indicator, kIndicatorCount> kAllIndicators = {
    Indicator::p,      Indicator::fp,      Indicator::ss_pii, Indicator::fss_pii,
    Indicator::ss_pir, Indicator::fss_pir, Indicator::qi_pii, Indicator::qi_pir};

/// Machine name ("ss_pii") and table heading ("SS^PII").
std::string_view to_string(Indicator indicator) noexcept;
std::string_view display_name(Indicator indicator) noexcept;
std::optional<Indicator> parse_indicator(std::string_view text) noexcept;

template <class T>
using PerIndicator = std::array<T, kIndicatorCount>;

/// Positional credit for ordered author lists: first and last authors weigh
/// more than second and penultimate, which weigh more than the rest. The
/// middle authors share whatever the four named positions leave.
struct PositionWeights {
  double first = 0.30;
  double last = 0.30;
  double second = 0.15;
  double penultimate = 0.15;

  friend bool operator==(const PositionWeights&, const PositionWeights&) = default;
};

struct FractionalScheme {
  enum class Mode { uniform, position_weighted };

  Mode mode = Mode::uniform;
  PositionWeights weights;

  static FractionalScheme uniform() { return {}; }
  static FractionalScheme position_weighted(PositionWeights w = {}) {
    return {Mode::position_weighted, w};
  }

  /// Throws Error{config} unless every named weight is positive and they
  /// leave a positive share for middle authors.
  void validate() const;

  friend bool operator==(const FractionalScheme&, const FractionalScheme&) = default;
};

std::string_view to_string(FractionalScheme::Mode mode) noexcept;
std::optional<FractionalScheme::Mode> parse_fractional_mode(std::string_view text) noexcept;

/// Credit per author slot for a publication with `author_count` authors.
/// Short lists fill first, last, second, penultimate in that order and
/// renormalize the weights that landed.
std::vector<double> author_weights(std::size_t author_count, const FractionalScheme& scheme);

/// The researcher's share of the publication. Throws Error{domain} when the
/// researcher is not one of its authors.
double contribution(const Publication& publication, std::string_view researcher_id,
                    const FractionalScheme& scheme);

struct IndicatorVector {
  std::string researcher_id;
  std::int64_t p = 0;
  double fp = 0.0;
  double ss_pii = 0.0;
  double fss_pii = 0.0;
  double ss_pir = 0.0;
  double fss_pir = 0.0;
  std::optional<double> qi_pii;  // undefined when p == 0
  std::optional<double> qi_pir;

  /// Exact values behind the rounded fields, filled by compute_indicators.
  /// Ranking uses them when present; undefined QI has no entry.
  PerIndicator<std::optional<ExactValue>> exact{};

  std::optional<double> value(Indicator indicator) const noexcept;

  /// Compares the reported (rounded) values only.
  friend bool operator==(const IndicatorVector& a, const IndicatorVector& b) {
    return a.researcher_id == b.researcher_id && a.p == b.p && a.fp == b.fp && a.ss_pii == b.ss_pii &&
           a.fss_pii == b.fss_pii && a.ss_pir == b.ss_pir && a.fss_pir == b.fss_pir && a.qi_pii == b.qi_pii &&
           a.qi_pir == b.qi_pir;
  }
};

using IndicatorMap = std::map<std::string, IndicatorVector>;

/// Restricts which publications count toward indicators (empty = all).
using PublicationFilter = std::function<bool(const Publication&)>;

/// One vector per registry researcher, including those with no output.
/// Sums are correctly rounded, so results do not depend on publication
/// order. Throws Error{internal_consistency} when an authored publication
/// has no score.
IndicatorMap compute_indicators(const CorpusSnapshot& snapshot, const ScoreMap& scores,
                                const FractionalScheme& scheme,
                                const PublicationFilter& include = {});

/// `researcher_id,p,fp,ss_pii,fss_pii,ss_pir,fss_pir,qi_pii,qi_pir`, four
/// decimals; undefined QI is written as an empty field.
void write_indicators_csv(const IndicatorMap& indicators, std::ostream& out);

}  // namespace bibliorank
