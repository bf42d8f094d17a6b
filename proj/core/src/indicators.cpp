#include "bibliorank/indicators.hpp"

#include <ostream>
#include <unordered_map>

#include <fmt/format.h>

#include "bibliorank/csv.hpp"
#include "bibliorank/error.hpp"
#include "bibliorank/exact_sum.hpp"

namespace bibliorank {

std::string_view to_string(Indicator indicator) noexcept {
  switch (indicator) {
    case Indicator::p: return "p";
    case Indicator::fp: return "fp";
    case Indicator::ss_pii: return "ss_pii";
    case Indicator::fss_pii: return "fss_pii";
    case Indicator::ss_pir: return "ss_pir";
    case Indicator::fss_pir: return "fss_pir";
    case Indicator::qi_pii: return "qi_pii";
    case Indicator::qi_pir: return "qi_pir";
  }
  return "p";
}

std::string_view display_name(Indicator indicator) noexcept {
  switch (indicator) {
    case Indicator::p: return "P";
    case Indicator::fp: return "FP";
    case Indicator::ss_pii: return "SS^PII";
    case Indicator::fss_pii: return "FSS^PII";
    case Indicator::ss_pir: return "SS^PIR";
    case Indicator::fss_pir: return "FSS^PIR";
    case Indicator::qi_pii: return "QI^PII";
    case Indicator::qi_pir: return "QI^PIR";
  }
  return "P";
}

std::optional<Indicator> parse_indicator(std::string_view text) noexcept {
  for (Indicator i : kAllIndicators) {
    if (text == to_string(i)) return i;
  }
  return std::nullopt;
}

std::string_view to_string(FractionalScheme::Mode mode) noexcept {
  return mode == FractionalScheme::Mode::uniform ? "uniform" : "position_weighted";
}

std::optional<FractionalScheme::Mode> parse_fractional_mode(std::string_view text) noexcept {
  if (text == "uniform") return FractionalScheme::Mode::uniform;
  if (text == "position_weighted") return FractionalScheme::Mode::position_weighted;
  return std::nullopt;
}

void FractionalScheme::validate() const {
  if (mode == Mode::uniform) return;
  const auto& w = weights;
  if (!(w.first > 0 && w.last > 0 && w.second > 0 && w.penultimate > 0)) {
    throw Error(ErrorCode::config, "position weights must all be positive");
  }
  ExactSum named;
  for (double x : {w.first, w.last, w.second, w.penultimate}) named.add(x);
  if (!(named.value() < 1.0)) {
    throw Error(ErrorCode::config,
                fmt::format("position weights sum to {:.4f}; they must leave a share for middle authors",
                            named.value()));
  }
}

std::vector<double> author_weights(std::size_t author_count, const FractionalScheme& scheme) {
  if (author_count == 0) throw Error(ErrorCode::domain, "publication has no authors");
  if (scheme.mode == FractionalScheme::Mode::uniform || author_count == 1) {
    return std::vector<double>(author_count, 1.0 / static_cast<double>(author_count));
  }
  const auto& w = scheme.weights;
  const std::size_t n = author_count;
  std::vector<double> out(n, 0.0);
  if (n >= 5) {
    ExactSum named;
    for (double x : {w.first, w.last, w.second, w.penultimate}) named.add(x);
    const double middle = (1.0 - named.value()) / static_cast<double>(n - 4);
    for (std::size_t i = 2; i + 2 < n; ++i) out[i] = middle;
    out[0] = w.first;
    out[1] = w.second;
    out[n - 2] = w.penultimate;
    out[n - 1] = w.last;
    return out;
  }
  // Collapse order: first, last, second, penultimate; a slot already taken
  // is not reassigned.
  const std::array<std::pair<std::size_t, double>, 4> claims = {
      {{0, w.first}, {n - 1, w.last}, {1, w.second}, {n - 2, w.penultimate}}};
  std::vector<bool> taken(n, false);
  ExactSum total;
  for (const auto& [slot, weight] : claims) {
    if (slot >= n || taken[slot]) continue;
    taken[slot] = true;
    out[slot] = weight;
    total.add(weight);
  }
  const double norm = total.value();
  for (double& x : out) x /= norm;
  return out;
}

double contribution(const Publication& publication, std::string_view researcher_id,
                    const FractionalScheme& scheme) {
  const auto slot = publication.position_of(researcher_id);
  if (!slot) {
    throw Error(ErrorCode::domain,
                fmt::format("'{}' is not an author of '{}'", researcher_id, publication.pub_id));
  }
  return author_weights(publication.author_count(), scheme)[*slot];
}

std::optional<double> IndicatorVector::value(Indicator indicator) const noexcept {
  switch (indicator) {
    case Indicator::p: return static_cast<double>(p);
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

IndicatorMap compute_indicators(const CorpusSnapshot& snapshot, const ScoreMap& scores,
                                const FractionalScheme& scheme, const PublicationFilter& include) {
  scheme.validate();
  std::unordered_map<std::size_t, std::vector<double>> weight_cache;
  auto weights_for = [&](std::size_t n) -> const std::vector<double>& {
    auto it = weight_cache.find(n);
    if (it == weight_cache.end()) it = weight_cache.emplace(n, author_weights(n, scheme)).first;
    return it->second;
  };

  const auto pubs = snapshot.publications();
  IndicatorMap out;
  for (const auto& researcher : snapshot.researchers()) {
    IndicatorVector v;
    v.researcher_id = researcher.researcher_id;
    ExactSum fp, ss_pii, fss_pii, ss_pir, fss_pir;
    for (std::size_t index : snapshot.authored_indices(researcher.researcher_id)) {
      const Publication& pub = pubs[index];
      if (include && !include(pub)) continue;
      auto score = scores.find(pub.pub_id);
      if (score == scores.end()) {
        throw Error(ErrorCode::internal_consistency,
                    fmt::format("no score for publication '{}'", pub.pub_id));
      }
      const double share = weights_for(pub.author_count())[*pub.position_of(researcher.researcher_id)];
      ++v.p;
      fp.add(share);
      ss_pii.add(score->second.pii);
      ss_pir.add(score->second.pir);
      fss_pii.add_product(share, score->second.pii);
      fss_pir.add_product(share, score->second.pir);
    }
    v.fp = fp.value();
    v.ss_pii = ss_pii.value();
    v.fss_pii = fss_pii.value();
    v.ss_pir = ss_pir.value();
    v.fss_pir = fss_pir.value();
    auto set_exact = [&](Indicator i, ExactValue x) { v.exact[static_cast<std::size_t>(i)] = std::move(x); };
    set_exact(Indicator::p, ExactValue(static_cast<double>(v.p)));
    set_exact(Indicator::fp, ExactValue(fp));
    set_exact(Indicator::ss_pii, ExactValue(ss_pii));
    set_exact(Indicator::fss_pii, ExactValue(fss_pii));
    set_exact(Indicator::ss_pir, ExactValue(ss_pir));
    set_exact(Indicator::fss_pir, ExactValue(fss_pir));
    if (v.p > 0) {
      v.qi_pii = v.ss_pii / static_cast<double>(v.p);
      v.qi_pir = v.ss_pir / static_cast<double>(v.p);
      set_exact(Indicator::qi_pii, ExactValue(ss_pii, v.p));
      set_exact(Indicator::qi_pir, ExactValue(ss_pir, v.p));
    }
    out.insert_or_assign(v.researcher_id, std::move(v));
  }
  return out;
}

void write_indicators_csv(const IndicatorMap& indicators, std::ostream& out) {
  auto opt = [](const std::optional<double>& x) { return x ? fmt::format("{:.4f}", *x) : std::string(); };
  out << "researcher_id,p,fp,ss_pii,fss_pii,ss_pir,fss_pir,qi_pii,qi_pir\n";
  for (const auto& [id, v] : indicators) {
    out << csv::escape(id) << ',' << v.p << ','
        << fmt::format("{:.4f},{:.4f},{:.4f},{:.4f},{:.4f}", v.fp, v.ss_pii, v.fss_pii, v.ss_pir, v.fss_pir)
        << ',' << opt(v.qi_pii) << ',' << opt(v.qi_pir) << '\n';
  }
}

}  // namespace bibliorank
