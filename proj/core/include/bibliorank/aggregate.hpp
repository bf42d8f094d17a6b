#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "bibliorank/baseline.hpp"
#include "bibliorank/corpus.hpp"
#include "bibliorank/indicators.hpp"
#include "bibliorank/ranking.hpp"

namespace bibliorank {

struct GroupProfile {
  std::string unit_id;
  std::vector<std::string> member_ids;
  PerIndicator<double> mean_percentile{};
  std::size_t member_count = 0;
  std::size_t sds_count = 0;

  double at(Indicator indicator) const noexcept {
    return mean_percentile[static_cast<std::size_t>(indicator)];
  }
};

/// Mean member percentile per indicator. Members may come from different
/// SDSs and ranks. Throws Error{domain} for an empty member list and
/// Error{not_found} for a member without a percentile vector.
GroupProfile group_profile(const PercentileMap& percentiles, std::span<const std::string> member_ids,
                           std::string unit_id = {});

/// Research-group tag -> member ids, from the registry's free-form tags.
std::map<std::string, std::vector<std::string>> group_members(const CorpusSnapshot& snapshot);
/// Department id -> member ids; researchers without a department are skipped.
std::map<std::string, std::vector<std::string>> department_members(const CorpusSnapshot& snapshot);

/// One SDS inside one university, evaluated on its pooled publication
/// portfolio. Productivity indicators are per staff member; QI is per paper.
struct SdsUnitProfile {
  std::string university;
  std::string sds;
  std::size_t staff_count = 0;
  std::size_t paper_count = 0;
  int window_years = 1;

  double p = 0.0;  // paper_count / staff_count
  double fp = 0.0;
  double ss_pii = 0.0;
  double fss_pii = 0.0;
  double ss_pir = 0.0;
  double fss_pir = 0.0;
  std::optional<double> qi_pii;  // undefined without papers
  std::optional<double> qi_pir;

  /// National percentile among units of the same SDS (see rank_sds_units).
  PerIndicator<double> percentile{};
  std::size_t peer_count = 0;

  std::optional<double> value(Indicator indicator) const noexcept;
  /// Productivity indicators divided by window years; QI is returned as is.
  std::optional<double> annualized(Indicator indicator) const noexcept;
};

/// Distinct papers count once for the unit (paper_count, SS); FP and FSS add
/// up each member's own fractional contribution. Throws Error{domain} when
/// the unit has no staff.
SdsUnitProfile sds_unit_profile(const CorpusSnapshot& snapshot, const ScoreMap& scores,
                                const std::string& university, const std::string& sds,
                                const FractionalScheme& scheme, const PublicationFilter& include = {});

/// Profiles for every (university, SDS) pair in the registry, ranked with
/// rank_sds_units. Ordered by (sds, university).
std::vector<SdsUnitProfile> all_sds_unit_profiles(const CorpusSnapshot& snapshot, const ScoreMap& scores,
                                                  const FractionalScheme& scheme,
                                                  const PublicationFilter& include = {});

/// Fills percentile/peer_count by ranking each unit against all units of the
/// same SDS, with the researcher-level percentile rule.
void rank_sds_units(std::vector<SdsUnitProfile>& profiles);

/// Publications at or above the citation threshold of their (category,
/// year, doc_type) stratum, where the threshold is the k-th largest count
/// and k = max(1, ceil(fraction * n)). A multi-category publication
/// survives if it qualifies in any stratum. fraction must be in (0, 1];
/// 1 keeps everything.
std::set<std::string> top_cited_subset(const CorpusSnapshot& snapshot, double fraction);

PublicationFilter filter_from(const std::set<std::string>& pub_ids);

struct ConcentrationRow {
  std::string unit;
  std::size_t staff = 0;
  std::size_t top_count = 0;
  double share_of_top = 0.0;  // top_count / all top researchers
  double top_rate = 0.0;      // top_count / staff
};

struct ConcentrationTable {
  Indicator indicator = Indicator::p;
  double fraction = 0.1;
  double cutoff = 90.0;
  std::vector<std::string> top_researchers;
  std::vector<ConcentrationRow> by_university;
  std::vector<ConcentrationRow> by_sds;
};

/// Marks researchers whose percentile is at least 100 * (1 - fraction)
/// within their stratum and tallies them per university and per SDS.
ConcentrationTable top_performers(const PercentileMap& percentiles, const CorpusSnapshot& snapshot,
                                  Indicator indicator, double fraction);

}  // namespace bibliorank
