#include "bibliorank/oracle.hpp"

#include <map>
#include <optional>
#include <span>

#include <fmt/format.h>
#include <gmpxx.h>
#include <mpfr.h>

#include "bibliorank/error.hpp"

namespace bibliorank::synth {

namespace {

// Nearest double to an exact rational (ties to even).
double round_to_double(const mpq_class& q) {
  mpfr_t x;
  mpfr_init2(x, 53);
  mpfr_set_q(x, q.get_mpq_t(), MPFR_RNDN);
  const double d = mpfr_get_d(x, MPFR_RNDN);
  mpfr_clear(x);
  return d;
}

mpq_class exact(double d) { return mpq_class(d); }

mpq_class exact(std::int64_t i) {
  mpz_class z;
  mpz_set_si(z.get_mpz_t(), static_cast<long>(i));
  return mpq_class(z);
}

// Publication scores recomputed by rescanning the whole corpus per category.
std::pair<double, double> oracle_scores(const Publication& pub, std::span<const Publication> all) {
  mpq_class pii_sum = 0, pir_sum = 0;
  for (const auto& category : pub.categories) {
    std::int64_t n = 0, total = 0, below = 0;
    for (const auto& other : all) {
      if (other.year != pub.year || other.doc_type != pub.doc_type) continue;
      bool in_category = false;
      for (const auto& c : other.categories) in_category = in_category || c == category;
      if (!in_category) continue;
      ++n;
      total += other.citations;
      if (other.citations < pub.citations) ++below;
    }
    double pii_c = 0.0;
    if (pub.citations != 0) {
      if (total == 0) throw Error(ErrorCode::degenerate_baseline, "oracle: zero-mean stratum");
      pii_c = round_to_double(exact(pub.citations) * exact(n) / exact(total));
    }
    const double pir_c = n <= 1 ? 50.0 : round_to_double(mpq_class(100 * below) / exact(n - 1));
    pii_sum += exact(pii_c);
    pir_sum += exact(pir_c);
  }
  const auto k = exact(static_cast<std::int64_t>(pub.categories.size()));
  if (pub.categories.size() == 1) return {pii_sum.get_d(), pir_sum.get_d()};
  return {round_to_double(exact(round_to_double(pii_sum)) / k),
          round_to_double(exact(round_to_double(pir_sum)) / k)};
}

// Author slot shares, following the same rounding points as production.
std::vector<double> oracle_weights(std::size_t n, const FractionalScheme& scheme) {
  std::vector<double> out(n, 0.0);
  if (scheme.mode == FractionalScheme::Mode::uniform || n == 1) {
    const double u = round_to_double(mpq_class(1) / exact(static_cast<std::int64_t>(n)));
    std::fill(out.begin(), out.end(), u);
    return out;
  }
  const auto& w = scheme.weights;
  if (n >= 5) {
    const double named =
        round_to_double(exact(w.first) + exact(w.last) + exact(w.second) + exact(w.penultimate));
    const double rest = round_to_double(mpq_class(1) - exact(named));
    const double middle = round_to_double(exact(rest) / exact(static_cast<std::int64_t>(n - 4)));
    for (std::size_t i = 0; i < n; ++i) out[i] = middle;
    out[0] = w.first;
    out[1] = w.second;
    out[n - 2] = w.penultimate;
    out[n - 1] = w.last;
    return out;
  }
  std::vector<std::optional<double>> assigned(n);
  const std::pair<std::size_t, double> claims[] = {{0, w.first}, {n - 1, w.last}, {1, w.second}, {n - 2, w.penultimate}};
  for (const auto& [slot, weight] : claims) {
    if (slot < n && !assigned[slot]) assigned[slot] = weight;
  }
  mpq_class total = 0;
  for (const auto& a : assigned) {
    if (a) total += exact(*a);
  }
  const double norm = round_to_double(total);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = assigned[i] ? round_to_double(exact(*assigned[i]) / exact(norm)) : 0.0;
  }
  return out;
}

// Unrounded indicator values; undefined QI is stored as 0.
using ExactIndicators = std::map<std::string, PerIndicator<mpq_class>>;

IndicatorMap oracle_indicators(const CorpusSnapshot& snapshot, const FractionalScheme& scheme,
                               ExactIndicators& exact_values) {
  const auto pubs = snapshot.publications();
  std::vector<std::pair<double, double>> scores;
  scores.reserve(pubs.size());
  for (const auto& pub : pubs) scores.push_back(oracle_scores(pub, pubs));

  IndicatorMap out;
  for (const auto& researcher : snapshot.researchers()) {
    IndicatorVector v;
    v.researcher_id = researcher.researcher_id;
    mpq_class fp = 0, ss_pii = 0, fss_pii = 0, ss_pir = 0, fss_pir = 0;
    for (std::size_t i = 0; i < pubs.size(); ++i) {
      const auto& authors = pubs[i].authors;
      for (std::size_t slot = 0; slot < authors.size(); ++slot) {
        if (authors[slot].researcher_id != researcher.researcher_id) continue;
        const mpq_class share = exact(oracle_weights(authors.size(), scheme)[slot]);
        const mpq_class a = exact(scores[i].first), b = exact(scores[i].second);
        ++v.p;
        fp += share;
        ss_pii += a;
        ss_pir += b;
        fss_pii += share * a;
        fss_pir += share * b;
      }
    }
    v.fp = round_to_double(fp);
    v.ss_pii = round_to_double(ss_pii);
    v.fss_pii = round_to_double(fss_pii);
    v.ss_pir = round_to_double(ss_pir);
    v.fss_pir = round_to_double(fss_pir);
    auto& x = exact_values[v.researcher_id];
    x = {exact(v.p), fp, ss_pii, fss_pii, ss_pir, fss_pir, mpq_class(0), mpq_class(0)};
    if (v.p > 0) {
      v.qi_pii = round_to_double(exact(v.ss_pii) / exact(v.p));
      v.qi_pir = round_to_double(exact(v.ss_pir) / exact(v.p));
      x[static_cast<std::size_t>(Indicator::qi_pii)] = ss_pii / exact(v.p);
      x[static_cast<std::size_t>(Indicator::qi_pir)] = ss_pir / exact(v.p);
    }
    out.insert_or_assign(v.researcher_id, std::move(v));
  }
  return out;
}

PercentileMap oracle_rank(const ExactIndicators& values, const CorpusSnapshot& snapshot, RankingMode mode) {
  PercentileMap out;
  const auto researchers = snapshot.researchers();
  for (const auto& r : researchers) {
    const Stratum stratum = stratum_for(r, mode);
    std::vector<const PerIndicator<mpq_class>*> peers;
    for (const auto& other : researchers) {
      if (stratum.contains(other)) peers.push_back(&values.at(other.researcher_id));
    }
    PercentileVector pv;
    pv.researcher_id = r.researcher_id;
    pv.stratum = stratum;
    pv.stratum_size = peers.size();
    const auto& mine = values.at(r.researcher_id);
    for (Indicator indicator : kAllIndicators) {
      double pct = 50.0;
      if (peers.size() > 1) {
        std::int64_t below = 0;
        for (const auto* peer : peers) {
          const auto i = static_cast<std::size_t>(indicator);
          if ((*peer)[i] < mine[i]) ++below;
        }
        pct = round_to_double(mpq_class(100 * below) / exact(static_cast<std::int64_t>(peers.size() - 1)));
      }
      pv.percentile[static_cast<std::size_t>(indicator)] = pct;
    }
    out.insert_or_assign(r.researcher_id, std::move(pv));
  }
  return out;
}

}  // namespace

OracleResult oracle_run(const CorpusSnapshot& snapshot, const FractionalScheme& scheme, RankingMode mode) {
  scheme.validate();
  OracleResult result;
  ExactIndicators values;
  result.indicators = oracle_indicators(snapshot, scheme, values);
  result.percentiles = oracle_rank(values, snapshot, mode);
  return result;
}

PercentileMap oracle_percentiles(const CorpusSnapshot& snapshot, const FractionalScheme& scheme,
                                 RankingMode mode) {
  return oracle_run(snapshot, scheme, mode).percentiles;
}

OracleComparison compare_percentiles(const PercentileMap& pipeline, const PercentileMap& oracle,
                                     std::size_t max_details) {
  OracleComparison cmp;
  auto note = [&](std::string line) {
    ++cmp.mismatches;
    if (cmp.details.size() < max_details) cmp.details.push_back(std::move(line));
  };
  for (const auto& [id, expected] : oracle) {
    auto it = pipeline.find(id);
    if (it == pipeline.end()) {
      note(fmt::format("{}: missing from pipeline", id));
      continue;
    }
    for (Indicator indicator : kAllIndicators) {
      ++cmp.compared;
      const double got = it->second.at(indicator);
      const double want = expected.at(indicator);
      if (got != want) note(fmt::format("{} {}: pipeline {} oracle {}", id, to_string(indicator), got, want));
    }
  }
  for (const auto& [id, pv] : pipeline) {
    if (!oracle.contains(id)) note(fmt::format("{}: not in oracle", id));
  }
  return cmp;
}

}  // namespace bibliorank::synth
