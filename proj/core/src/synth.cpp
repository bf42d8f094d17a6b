#include "bibliorank/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <unordered_set>

#include <boost/random/bernoulli_distribution.hpp>
#include <boost/random/discrete_distribution.hpp>
#include <boost/random/normal_distribution.hpp>
#include <boost/random/poisson_distribution.hpp>
#include <boost/random/uniform_int_distribution.hpp>
#include <boost/random/uniform_real_distribution.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "bibliorank/error.hpp"

namespace bibliorank::synth {

namespace {

using Engine = std::mt19937_64;

bool sums_to_one(const std::vector<double>& p) {
  double total = 0.0;
  for (double x : p) {
    if (!(x >= 0.0)) return false;
    total += x;
  }
  return std::abs(total - 1.0) < 1e-9;
}

std::string area_of(const std::string& sds) {
  const auto slash = sds.find('/');
  return slash == std::string::npos ? sds : sds.substr(0, slash);
}

struct PlantedResearcher {
  std::size_t index;  // into the researcher vector
  double quality;
  double productivity;
};

}  // namespace

void GeneratorConfig::validate() const {
  auto fail = [](const std::string& message) { throw Error(ErrorCode::config, message); };
  if (fields.empty()) fail("generator needs at least one field");
  for (const auto& f : fields) {
    if (f.sds.empty()) fail("field sds must not be empty");
    if (f.categories.empty()) fail(fmt::format("field {} has no categories", f.sds));
    if (f.staff_count < 1) fail(fmt::format("field {} needs at least one researcher", f.sds));
    if (!(f.fertility_mean >= 0.0)) fail(fmt::format("field {} has negative fertility", f.sds));
    if (!(f.citation_median > 0.0)) fail(fmt::format("field {} needs a positive citation median", f.sds));
    if (!(f.citation_dispersion >= 0.0)) fail(fmt::format("field {} has negative dispersion", f.sds));
  }
  if (co_author_distribution.empty() || !sums_to_one(co_author_distribution)) {
    fail("co-author distribution must be non-empty and sum to 1");
  }
  if (!sums_to_one({rank_mix.begin(), rank_mix.end()})) fail("rank mix must sum to 1");
  for (double m : rank_fertility) {
    if (!(m >= 0.0)) fail("rank fertility multipliers must be non-negative");
  }
  if (years.start > years.end) fail("generator year window is inverted");
  if (university_count < 1) fail("need at least one university");
  if (groups_per_department < 1) fail("need at least one group per department");
  for (double share : {internal_coauthor_share, review_share, multi_category_share}) {
    if (!(share >= 0.0 && share <= 1.0)) fail("shares must lie in [0, 1]");
  }
  if (!(quality_dispersion >= 0.0)) fail("quality dispersion must be non-negative");
}

CorpusSnapshot generate(const GeneratorConfig& config) {
  config.validate();
  Engine rng(config.seed);
  boost::random::normal_distribution<double> normal(0.0, 1.0);
  boost::random::discrete_distribution<int> rank_draw(config.rank_mix.begin(), config.rank_mix.end());
  boost::random::discrete_distribution<int> author_count_draw(config.co_author_distribution.begin(),
                                                              config.co_author_distribution.end());
  boost::random::uniform_int_distribution<std::size_t> university_draw(0, config.university_count - 1);
  boost::random::uniform_int_distribution<std::size_t> group_draw(1, config.groups_per_department);
  boost::random::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<Researcher> researchers;
  std::vector<std::vector<PlantedResearcher>> by_field(config.fields.size());
  std::size_t researcher_counter = 0;
  for (std::size_t f = 0; f < config.fields.size(); ++f) {
    const auto& field = config.fields[f];
    for (std::size_t i = 0; i < field.staff_count; ++i) {
      Researcher r;
      r.researcher_id = fmt::format("R{:06d}", ++researcher_counter);
      r.sds = field.sds;
      r.rank = static_cast<AcademicRank>(rank_draw(rng));
      r.university = fmt::format("U{:02d}", university_draw(rng) + 1);
      r.department = fmt::format("{}-{}", r.university, area_of(field.sds));
      r.groups = {fmt::format("{}-G{}", *r.department, group_draw(rng))};
      const double quality = std::exp(config.quality_dispersion * normal(rng));
      // Mean-one lognormal so field fertility stays the expected paper rate.
      constexpr double kProductivitySigma = 0.3;
      const double productivity =
          std::exp(kProductivitySigma * normal(rng) - 0.5 * kProductivitySigma * kProductivitySigma);
      by_field[f].push_back({researchers.size(), quality, productivity});
      researchers.push_back(std::move(r));
    }
  }

  std::vector<Publication> publications;
  std::size_t pub_counter = 0;
  for (std::size_t f = 0; f < config.fields.size(); ++f) {
    const auto& field = config.fields[f];
    const auto& pool = by_field[f];
    boost::random::uniform_int_distribution<std::size_t> colleague_draw(0, pool.size() - 1);
    boost::random::uniform_int_distribution<std::size_t> category_draw(0, field.categories.size() - 1);
    for (const auto& planted : pool) {
      const Researcher& lead = researchers[planted.index];
      const double rate = field.fertility_mean *
                          config.rank_fertility[static_cast<std::size_t>(lead.rank)] * planted.productivity;
      for (int year = config.years.start; year <= config.years.end; ++year) {
        int papers = 0;
        if (rate > 0.0) papers = boost::random::poisson_distribution<int, double>(rate)(rng);
        for (int k = 0; k < papers; ++k) {
          Publication pub;
          pub.pub_id = fmt::format("P{:07d}", ++pub_counter);
          pub.year = year;
          pub.doc_type = unit(rng) < config.review_share ? DocType::review : DocType::article;

          const std::size_t home = category_draw(rng);
          pub.categories.push_back(field.categories[home]);
          if (field.categories.size() > 1 && unit(rng) < config.multi_category_share) {
            std::size_t other = category_draw(rng);
            if (other == home) other = (home + 1) % field.categories.size();
            pub.categories.push_back(field.categories[other]);
          }

          const std::size_t author_count = static_cast<std::size_t>(author_count_draw(rng)) + 1;
          boost::random::uniform_int_distribution<std::size_t> slot_draw(0, author_count - 1);
          const std::size_t lead_slot = slot_draw(rng);
          std::unordered_set<std::size_t> on_paper{planted.index};
          pub.authors.resize(author_count);
          for (std::size_t slot = 0; slot < author_count; ++slot) {
            if (slot == lead_slot) {
              pub.authors[slot] = Author::registry(lead.researcher_id);
              continue;
            }
            pub.authors[slot] = Author::external();
            if (pool.size() > 1 && unit(rng) < config.internal_coauthor_share) {
              const std::size_t pick = pool[colleague_draw(rng)].index;
              if (on_paper.insert(pick).second) {
                pub.authors[slot] = Author::registry(researchers[pick].researcher_id);
              }
            }
          }

          const double draw = field.citation_median * planted.quality *
                              std::exp(field.citation_dispersion * normal(rng));
          pub.citations = static_cast<std::int64_t>(std::floor(std::min(draw, 1e9)));
          publications.push_back(std::move(pub));
        }
      }
    }
  }
  return CorpusSnapshot(std::move(publications), std::move(researchers), config.census_date, config.years);
}

GeneratorConfig national_scale_config(std::uint64_t seed) {
  static constexpr std::array<const char*, 10> kAreas = {"MAT", "FIS", "CHIM", "GEO", "BIO",
                                                        "MED", "AGR", "ING-IND", "ING-INF", "ICAR"};
  constexpr std::size_t kFields = 170;
  constexpr std::size_t kResearchers = 35000;
  GeneratorConfig config;
  config.seed = seed;
  config.university_count = 60;
  config.rank_fertility = {0.8, 1.0, 1.25};
  for (std::size_t i = 0; i < kFields; ++i) {
    FieldSpec field;
    field.sds = fmt::format("{}/{:02d}", kAreas[i % kAreas.size()], i / kAreas.size() + 1);
    field.categories = {fmt::format("C{:03d}", i + 1), fmt::format("C{:03d}", (i + 1) % kFields + 1)};
    field.staff_count = kResearchers / kFields + (i < kResearchers % kFields ? 1 : 0);
    field.fertility_mean = 0.65 + 1.6 * static_cast<double>(i % 17) / 16.0;
    field.citation_median = 2.0 + static_cast<double>(i % 9);
    field.citation_dispersion = 0.8 + 0.05 * static_cast<double>(i % 7);
    config.fields.push_back(std::move(field));
  }
  return config;
}

GeneratorConfig random_small_config(std::uint64_t seed) {
  Engine rng(seed ^ 0x9e3779b97f4a7c15ULL);
  boost::random::uniform_int_distribution<std::size_t> field_count(1, 4);
  boost::random::uniform_real_distribution<double> unit(0.0, 1.0);

  GeneratorConfig config;
  config.seed = seed;
  const std::size_t fields = field_count(rng);
  const std::size_t budget = boost::random::uniform_int_distribution<std::size_t>(fields, 500)(rng);
  config.university_count = boost::random::uniform_int_distribution<std::size_t>(1, 6)(rng);
  config.rank_fertility = {0.6 + 0.8 * unit(rng), 0.6 + 0.8 * unit(rng), 0.6 + 0.8 * unit(rng)};
  config.internal_coauthor_share = 0.6 * unit(rng);
  config.multi_category_share = 0.3 * unit(rng);
  std::size_t used = 0;
  for (std::size_t f = 0; f < fields; ++f) {
    FieldSpec field;
    field.sds = fmt::format("SDS/{:02d}", f + 1);
    const std::size_t cats = boost::random::uniform_int_distribution<std::size_t>(1, 3)(rng);
    for (std::size_t c = 0; c < cats; ++c) field.categories.push_back(fmt::format("CAT-{}-{}", f + 1, c + 1));
    const std::size_t remaining_fields = fields - f - 1;
    const std::size_t cap = budget - used - remaining_fields;
    field.staff_count = f + 1 == fields ? cap
                                        : boost::random::uniform_int_distribution<std::size_t>(1, std::max<std::size_t>(1, cap / 2))(rng);
    used += field.staff_count;
    field.fertility_mean = 1.5 * unit(rng);
    field.citation_median = 0.5 + 10.0 * unit(rng);
    field.citation_dispersion = 1.5 * unit(rng);
    config.fields.push_back(std::move(field));
  }
  return config;
}

GeneratorConfig generator_config_from_json(std::string_view text) {
  using nlohmann::json;
  try {
    const json doc = json::parse(text);
    GeneratorConfig c;
    c.seed = doc.value("seed", c.seed);
    for (const auto& f : doc.at("fields")) {
      FieldSpec field;
      field.sds = f.at("sds").get<std::string>();
      if (f.contains("categories")) {
        field.categories = f.at("categories").get<std::vector<std::string>>();
      } else {
        field.categories = {f.at("category").get<std::string>()};
      }
      field.staff_count = f.at("staff_count").get<std::size_t>();
      field.fertility_mean = f.value("fertility_mean", field.fertility_mean);
      field.citation_median = f.value("citation_median", field.citation_median);
      field.citation_dispersion = f.value("citation_dispersion", field.citation_dispersion);
      c.fields.push_back(std::move(field));
    }
    c.co_author_distribution = doc.value("co_author_distribution", c.co_author_distribution);
    auto per_rank = [&](const char* key, PerRank& out) {
      if (!doc.contains(key)) return;
      const auto& node = doc.at(key);
      out = {node.at("assistant").get<double>(), node.at("associate").get<double>(), node.at("full").get<double>()};
    };
    per_rank("rank_mix", c.rank_mix);
    per_rank("rank_fertility", c.rank_fertility);
    if (doc.contains("years")) c.years = {doc.at("years").at("start").get<int>(), doc.at("years").at("end").get<int>()};
    if (doc.contains("census_date")) c.census_date = CensusDate::parse(doc.at("census_date").get<std::string>());
    c.university_count = doc.value("university_count", c.university_count);
    c.groups_per_department = doc.value("groups_per_department", c.groups_per_department);
    c.internal_coauthor_share = doc.value("internal_coauthor_share", c.internal_coauthor_share);
    c.review_share = doc.value("review_share", c.review_share);
    c.multi_category_share = doc.value("multi_category_share", c.multi_category_share);
    c.quality_dispersion = doc.value("quality_dispersion", c.quality_dispersion);
    c.validate();
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::config, fmt::format("generator config: {}", e.what()));
  }
}

std::string generator_config_to_json(const GeneratorConfig& c) {
  using nlohmann::json;
  json fields = json::array();
  for (const auto& f : c.fields) {
    fields.push_back({{"sds", f.sds},
                      {"categories", f.categories},
                      {"staff_count", f.staff_count},
                      {"fertility_mean", f.fertility_mean},
                      {"citation_median", f.citation_median},
                      {"citation_dispersion", f.citation_dispersion}});
  }
  auto per_rank = [](const PerRank& r) {
    return json{{"assistant", r[0]}, {"associate", r[1]}, {"full", r[2]}};
  };
  json doc = {{"seed", c.seed},
              {"fields", std::move(fields)},
              {"co_author_distribution", c.co_author_distribution},
              {"rank_mix", per_rank(c.rank_mix)},
              {"rank_fertility", per_rank(c.rank_fertility)},
              {"years", {{"start", c.years.start}, {"end", c.years.end}}},
              {"census_date", c.census_date.iso()},
              {"university_count", c.university_count},
              {"groups_per_department", c.groups_per_department},
              {"internal_coauthor_share", c.internal_coauthor_share},
              {"review_share", c.review_share},
              {"multi_category_share", c.multi_category_share},
              {"quality_dispersion", c.quality_dispersion}};
  return doc.dump(2) + "\n";
}

}  // namespace bibliorank::synth
