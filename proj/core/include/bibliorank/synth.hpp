#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "bibliorank/corpus.hpp"

namespace bibliorank::synth {

struct FieldSpec {
  std::string sds;
  std::vector<std::string> categories;  // first entry is the home category
  std::size_t staff_count = 1;
  double fertility_mean = 1.0;       // papers per researcher per year
  double citation_median = 5.0;      // before per-researcher quality
  double citation_dispersion = 1.0;  // sigma of log citations
};

/// Indexed by AcademicRank: assistant, associate, full.
using PerRank = std::array<double, 3>;

struct GeneratorConfig {
  std::uint64_t seed = 1;
  std::vector<FieldSpec> fields;
  /// P(k authors) for k = 1, 2, ...
  std::vector<double> co_author_distribution = {0.10, 0.20, 0.25, 0.20, 0.15, 0.10};
  PerRank rank_mix = {0.35, 0.35, 0.30};
  /// Multiplies field fertility by rank; {1, 1, 1} decouples rank from output.
  PerRank rank_fertility = {1.0, 1.0, 1.0};
  YearWindow years{2004, 2006};
  CensusDate census_date = CensusDate::parse("2008-03-31");
  std::size_t university_count = 8;
  std::size_t groups_per_department = 3;
  /// Probability that a co-author slot is a registry member of the same field.
  double internal_coauthor_share = 0.4;
  double review_share = 0.1;
  double multi_category_share = 0.15;
  /// Sigma of the per-researcher planted quality (log scale).
  double quality_dispersion = 0.4;

  /// Throws Error{config} on violated invariants.
  void validate() const;
};

/// Deterministic for a given config (seed included). Citation counts are
/// floor(median * quality * lognormal); paper counts are Poisson around the
/// field fertility scaled by rank and a per-researcher productivity factor.
/// Co-authors are drawn only from the author's own field.
CorpusSnapshot generate(const GeneratorConfig& config);

/// 35,000 researchers in 170 fields/categories, about 150,000 publications.
GeneratorConfig national_scale_config(std::uint64_t seed);

/// Randomly shaped small corpus (at most 500 researchers) for oracle sweeps.
GeneratorConfig random_small_config(std::uint64_t seed);

GeneratorConfig generator_config_from_json(std::string_view text);
std::string generator_config_to_json(const GeneratorConfig& config);

}  // namespace bibliorank::synth
