#pragma once

#include <string>
#include <vector>

#include "bibliorank/aggregate.hpp"
#include "bibliorank/baseline.hpp"
#include "bibliorank/corpus.hpp"
#include "bibliorank/indicators.hpp"
#include "bibliorank/ranking.hpp"

namespace bibliorank {

struct PipelineResult {
  BaselineTable baselines;
  ScoreMap scores;
  IndicatorMap indicators;
  PercentileMap percentiles;
  /// Degenerate baseline strata and single-member researcher strata.
  std::vector<std::string> warnings;
};

/// Baselines, publication scores, researcher indicators and percentiles.
PipelineResult run_pipeline(const CorpusSnapshot& snapshot, const FractionalScheme& scheme, RankingMode mode);

}  // namespace bibliorank
