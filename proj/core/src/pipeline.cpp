#include "bibliorank/pipeline.hpp"

#include <fmt/format.h>

namespace bibliorank {

PipelineResult run_pipeline(const CorpusSnapshot& snapshot, const FractionalScheme& scheme, RankingMode mode) {
  PipelineResult result;
  result.baselines = build_baselines(snapshot);
  for (const auto& key : result.baselines.degenerate_keys()) {
    result.warnings.push_back(fmt::format("stratum ({}, {}, {}) has no citations; its PII is 0 throughout",
                                          key.category, key.year, to_string(key.doc_type)));
  }
  result.scores = score_publications(snapshot, result.baselines);
  result.indicators = compute_indicators(snapshot, result.scores, scheme);
  result.percentiles = rank_all(result.indicators, snapshot, mode);
  for (const auto& stratum : singleton_strata(result.percentiles)) {
    result.warnings.push_back(fmt::format("stratum {} has a single researcher; percentiles default to 50",
                                          stratum.label()));
  }
  return result;
}

}  // namespace bibliorank
