#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "bibliorank/corpus.hpp"
#include "bibliorank/indicators.hpp"
#include "bibliorank/ranking.hpp"

namespace bibliorank::synth {

/// Reference results computed along an independent path: quadratic scans
/// for baselines, authorship and ranks, and exact rational arithmetic (GMP)
/// rounded once per quantity (MPFR). Shares only domain types with the
/// production pipeline. Meant for corpora of a few thousand researchers.
struct OracleResult {
  IndicatorMap indicators;
  PercentileMap percentiles;
};

OracleResult oracle_run(const CorpusSnapshot& snapshot, const FractionalScheme& scheme, RankingMode mode);

PercentileMap oracle_percentiles(const CorpusSnapshot& snapshot, const FractionalScheme& scheme,
                                 RankingMode mode);

struct OracleComparison {
  std::size_t compared = 0;
  std::size_t mismatches = 0;
  std::vector<std::string> details;

  bool ok() const noexcept { return mismatches == 0; }
};

/// Exact (bitwise) comparison of two percentile maps.
OracleComparison compare_percentiles(const PercentileMap& pipeline, const PercentileMap& oracle,
                                     std::size_t max_details = 10);

}  // namespace bibliorank::synth
