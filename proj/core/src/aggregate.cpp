#include "bibliorank/aggregate.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <unordered_map>

#include <fmt/format.h>

#include "bibliorank/error.hpp"
#include "bibliorank/exact_sum.hpp"

namespace bibliorank {

GroupProfile group_profile(const PercentileMap& percentiles, std::span<const std::string> member_ids,
                           std::string unit_id) {
  if (member_ids.empty()) throw Error(ErrorCode::domain, fmt::format("unit '{}' has no members", unit_id));
  GroupProfile profile;
  profile.unit_id = std::move(unit_id);
  profile.member_ids.assign(member_ids.begin(), member_ids.end());
  profile.member_count = member_ids.size();

  std::set<std::string> sds;
  PerIndicator<ExactSum> sums;
  PerIndicator<double> lo, hi;
  lo.fill(100.0);
  hi.fill(0.0);
  for (const auto& id : member_ids) {
    auto it = percentiles.find(id);
    if (it == percentiles.end()) {
      throw Error(ErrorCode::not_found, fmt::format("member '{}' has no percentile vector", id));
    }
    sds.insert(it->second.stratum.sds);
    for (std::size_t k = 0; k < kIndicatorCount; ++k) {
      const double x = it->second.percentile[k];
      sums[k].add(x);
      lo[k] = std::min(lo[k], x);
      hi[k] = std::max(hi[k], x);
    }
  }
  profile.sds_count = sds.size();
  for (std::size_t k = 0; k < kIndicatorCount; ++k) {
    const double mean = sums[k].value() / static_cast<double>(member_ids.size());
    // The rounded mean can land one ulp outside the member range.
    profile.mean_percentile[k] = std::clamp(mean, lo[k], hi[k]);
  }
  return profile;
}

std::map<std::string, std::vector<std::string>> group_members(const CorpusSnapshot& snapshot) {
  std::map<std::string, std::vector<std::string>> out;
  for (const auto& r : snapshot.researchers()) {
    for (const auto& tag : r.groups) out[tag].push_back(r.researcher_id);
  }
  return out;
}

std::map<std::string, std::vector<std::string>> department_members(const CorpusSnapshot& snapshot) {
  std::map<std::string, std::vector<std::string>> out;
  for (const auto& r : snapshot.researchers()) {
    if (r.department) out[*r.department].push_back(r.researcher_id);
  }
  return out;
}

std::optional<double> SdsUnitProfile::value(Indicator indicator) const noexcept {
  switch (indicator) {
    case Indicator::p: return p;
    case Indicator::fp: return fp;
    case Indicator::ss_pii: return ss_pii;
    case Indicator::fss_pii: return fss_pii;
    case Indicator::ss_pir: return ss_pir;
    case Indicator::fss_pir: return fss_pir;
    case Indicator::qi_pii: return qi_pii;
    case Indicator::qi_pir: return qi_pir;
  }
  return std::nullopt;
}

std::optional<double> SdsUnitProfile::annualized(Indicator indicator) const noexcept {
  auto v = value(indicator);
  if (!v || indicator == Indicator::qi_pii || indicator == Indicator::qi_pir) return v;
  return *v / static_cast<double>(window_years);
}

namespace {

SdsUnitProfile profile_for_staff(const CorpusSnapshot& snapshot, const ScoreMap& scores,
                                 const std::string& university, const std::string& sds,
                                 std::span<const Researcher* const> staff, const FractionalScheme& scheme,
                                 const PublicationFilter& include) {
  SdsUnitProfile unit;
  unit.university = university;
  unit.sds = sds;
  unit.staff_count = staff.size();
  unit.window_years = std::max(1, snapshot.window().years());

  const auto pubs = snapshot.publications();
  auto score_of = [&](const Publication& pub) -> const PublicationScore& {
    auto it = scores.find(pub.pub_id);
    if (it == scores.end()) {
      throw Error(ErrorCode::internal_consistency, fmt::format("no score for publication '{}'", pub.pub_id));
    }
    return it->second;
  };

  std::set<std::size_t> portfolio;
  ExactSum fp, fss_pii, fss_pir;
  for (const Researcher* member : staff) {
    for (std::size_t index : snapshot.authored_indices(member->researcher_id)) {
      const Publication& pub = pubs[index];
      if (include && !include(pub)) continue;
      portfolio.insert(index);
      const auto& score = score_of(pub);
      const double share = contribution(pub, member->researcher_id, scheme);
      fp.add(share);
      fss_pii.add_product(share, score.pii);
      fss_pir.add_product(share, score.pir);
    }
  }
  ExactSum ss_pii, ss_pir;
  for (std::size_t index : portfolio) {
    const auto& score = score_of(pubs[index]);
    ss_pii.add(score.pii);
    ss_pir.add(score.pir);
  }

  unit.paper_count = portfolio.size();
  const double staff_n = static_cast<double>(unit.staff_count);
  unit.p = static_cast<double>(unit.paper_count) / staff_n;
  unit.fp = fp.value() / staff_n;
  unit.ss_pii = ss_pii.value() / staff_n;
  unit.fss_pii = fss_pii.value() / staff_n;
  unit.ss_pir = ss_pir.value() / staff_n;
  unit.fss_pir = fss_pir.value() / staff_n;
  if (unit.paper_count > 0) {
    const double papers = static_cast<double>(unit.paper_count);
    unit.qi_pii = ss_pii.value() / papers;
    unit.qi_pir = ss_pir.value() / papers;
  }
  return unit;
}

}  // namespace

SdsUnitProfile sds_unit_profile(const CorpusSnapshot& snapshot, const ScoreMap& scores,
                                const std::string& university, const std::string& sds,
                                const FractionalScheme& scheme, const PublicationFilter& include) {
  scheme.validate();
  std::vector<const Researcher*> staff;
  for (const auto& r : snapshot.researchers()) {
    if (r.university == university && r.sds == sds) staff.push_back(&r);
  }
  if (staff.empty()) {
    throw Error(ErrorCode::domain, fmt::format("no staff in {} at {}", sds, university));
  }
  return profile_for_staff(snapshot, scores, university, sds, staff, scheme, include);
}

std::vector<SdsUnitProfile> all_sds_unit_profiles(const CorpusSnapshot& snapshot, const ScoreMap& scores,
                                                  const FractionalScheme& scheme,
                                                  const PublicationFilter& include) {
  scheme.validate();
  std::map<std::pair<std::string, std::string>, std::vector<const Researcher*>> units;
  for (const auto& r : snapshot.researchers()) units[{r.sds, r.university}].push_back(&r);
  std::vector<SdsUnitProfile> out;
  out.reserve(units.size());
  for (const auto& [key, staff] : units) {
    out.push_back(profile_for_staff(snapshot, scores, key.second, key.first, staff, scheme, include));
  }
  rank_sds_units(out);
  return out;
}

void rank_sds_units(std::vector<SdsUnitProfile>& profiles) {
  std::map<std::string, std::vector<std::size_t>> by_sds;
  for (std::size_t i = 0; i < profiles.size(); ++i) by_sds[profiles[i].sds].push_back(i);
  for (const auto& [sds, members] : by_sds) {
    std::vector<std::optional<double>> column(members.size());
    for (Indicator indicator : kAllIndicators) {
      for (std::size_t j = 0; j < members.size(); ++j) column[j] = ranking_key(profiles[members[j]].value(indicator));
      const auto ranks = strict_lower_percentiles(column);
      for (std::size_t j = 0; j < members.size(); ++j) {
        profiles[members[j]].percentile[static_cast<std::size_t>(indicator)] = ranks[j];
        profiles[members[j]].peer_count = members.size();
      }
    }
  }
}

std::set<std::string> top_cited_subset(const CorpusSnapshot& snapshot, double fraction) {
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw Error(ErrorCode::domain, fmt::format("top fraction {} is outside (0, 1]", fraction));
  }
  const auto pubs = snapshot.publications();
  std::map<BaselineKey, std::vector<std::size_t>> strata;
  for (std::size_t i = 0; i < pubs.size(); ++i) {
    for (const auto& category : pubs[i].categories) {
      strata[BaselineKey{category, pubs[i].year, pubs[i].doc_type}].push_back(i);
    }
  }
  std::set<std::string> survivors;
  std::vector<std::int64_t> counts;
  for (const auto& [key, members] : strata) {
    counts.clear();
    for (std::size_t i : members) counts.push_back(pubs[i].citations);
    std::sort(counts.begin(), counts.end(), std::greater<>());
    const double raw = fraction * static_cast<double>(counts.size());
    // Snap products like 0.2 * 10 that land a hair above an integer.
    const double nearest = std::round(raw);
    std::size_t keep = std::abs(raw - nearest) < 1e-9 ? static_cast<std::size_t>(nearest)
                                                      : static_cast<std::size_t>(std::ceil(raw));
    keep = std::clamp<std::size_t>(keep, 1, counts.size());
    const std::int64_t threshold = counts[keep - 1];
    for (std::size_t i : members) {
      if (pubs[i].citations >= threshold) survivors.insert(pubs[i].pub_id);
    }
  }
  return survivors;
}

PublicationFilter filter_from(const std::set<std::string>& pub_ids) {
  auto ids = std::make_shared<const std::set<std::string>>(pub_ids);
  return [ids](const Publication& pub) { return ids->contains(pub.pub_id); };
}

ConcentrationTable top_performers(const PercentileMap& percentiles, const CorpusSnapshot& snapshot,
                                  Indicator indicator, double fraction) {
  if (!(fraction > 0.0 && fraction < 1.0)) {
    throw Error(ErrorCode::domain, fmt::format("top fraction {} is outside (0, 1)", fraction));
  }
  ConcentrationTable table;
  table.indicator = indicator;
  table.fraction = fraction;
  table.cutoff = 100.0 * (1.0 - fraction);

  std::map<std::string, ConcentrationRow> universities, fields;
  for (const auto& [id, pv] : percentiles) {
    const Researcher* r = snapshot.find_researcher(id);
    if (r == nullptr) throw Error(ErrorCode::not_found, fmt::format("unknown researcher '{}'", id));
    auto& u = universities[r->university];
    auto& s = fields[r->sds];
    ++u.staff;
    ++s.staff;
    if (pv.at(indicator) >= table.cutoff - 1e-9) {
      table.top_researchers.push_back(id);
      ++u.top_count;
      ++s.top_count;
    }
  }
  const double total = static_cast<double>(table.top_researchers.size());
  auto finish = [&](std::map<std::string, ConcentrationRow>& rows, std::vector<ConcentrationRow>& out) {
    for (auto& [unit, row] : rows) {
      row.unit = unit;
      row.share_of_top = total > 0 ? static_cast<double>(row.top_count) / total : 0.0;
      row.top_rate = static_cast<double>(row.top_count) / static_cast<double>(row.staff);
      out.push_back(row);
    }
  };
  finish(universities, table.by_university);
  finish(fields, table.by_sds);
  return table;
}

}  // namespace bibliorank
