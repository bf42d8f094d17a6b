#include "commands.hpp"

#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "bibliorank/error.hpp"
#include "bibliorank/ingest.hpp"
#include "bibliorank/manifest.hpp"
#include "bibliorank/oracle.hpp"
#include "bibliorank/pipeline.hpp"
#include "bibliorank/synth.hpp"
#include "run_io.hpp"

namespace bibliorank::cli {

namespace fs = std::filesystem;

std::string tool_version() { return BIBLIORANK_VERSION; }

std::string error_record(const std::exception& e) {
  nlohmann::json record;
  if (const auto* error = dynamic_cast<const Error*>(&e)) {
    record["error"] = std::string(to_string(error->code()));
    record["message"] = error->what();
    if (error->line()) record["line"] = *error->line();
  } else {
    record["error"] = "internal";
    record["message"] = e.what();
  }
  return record.dump();
}

int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const Error& e) {
    err << error_record(e) << '\n';
    return e.code() == ErrorCode::internal_consistency ? kExitInternal : kExitBadInput;
  } catch (const std::exception& e) {
    err << error_record(e) << '\n';
    return kExitInternal;
  }
}

void write_output(const fs::path& dir, const std::string& name, const std::string& content,
                  RunManifest& manifest) {
  fs::create_directories(dir);
  const fs::path path = dir / name;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
  out.close();
  if (!out) throw Error(ErrorCode::io, fmt::format("cannot write '{}'", path.string()));
  manifest.outputs[name] = sha256_hex(content);
}

namespace {

void print_warnings(std::ostream& err, const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) err << "warning: " << w << '\n';
}

std::string snapshot_reference(const fs::path& path) {
  return fs::weakly_canonical(fs::absolute(path)).generic_string();
}

}  // namespace

int run_ingest(const IngestArgs& args, Streams io) {
  return guarded(io.err, [&] {
    const RunConfig config = resolve_config(args.overrides);
    LoadResult loaded = load_snapshot(args.publications, args.researchers, config.ingest_options());
    std::vector<std::string> warnings = loaded.warnings;
    for (const auto& v : loaded.report.violations) {
      warnings.push_back(fmt::format("{} on '{}': {}", to_string(v.kind), v.subject, v.detail));
    }
    const fs::path target = args.snapshot.value_or(config.output_dir / "snapshot.json");
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    write_snapshot(loaded.snapshot, target);
    print_warnings(io.err, warnings);
    io.out << fmt::format("researchers={} publications={} warnings={}\n", loaded.snapshot.researchers().size(),
                          loaded.snapshot.publications().size(), warnings.size());
    return kExitOk;
  });
}

int run_score(const ScoreArgs& args, Streams io) {
  return guarded(io.err, [&] {
    const RunConfig config = resolve_config(args.overrides);
    const CorpusSnapshot snapshot = read_snapshot(args.snapshot);

    RunManifest manifest;
    manifest.tool_version = tool_version();
    manifest.command = "score";
    manifest.snapshot_path = snapshot_reference(args.snapshot);
    manifest.snapshot_sha256 = sha256_file(args.snapshot);
    manifest.config_text = config.canonical_text();
    manifest.config_sha256 = sha256_hex(manifest.config_text);
    manifest.census_date = snapshot.census_date().iso();

    PipelineResult result;
    if (snapshot.empty()) {
      manifest.warnings.push_back("snapshot is empty; outputs contain headers only");
    } else {
      result = run_pipeline(snapshot, config.scheme, config.ranking_mode);
      manifest.warnings = result.warnings;
    }

    std::ostringstream baselines, scores, indicators, percentiles;
    write_baselines_csv(result.baselines, baselines);
    scores << "pub_id,pii,pir\n";
    for (const auto& pub : snapshot.publications()) {
      const auto& s = result.scores.at(pub.pub_id);
      scores << fmt::format("{},{:.4f},{:.4f}\n", pub.pub_id, s.pii, s.pir);
    }
    write_indicators_csv(result.indicators, indicators);
    write_ranking_csv(result.percentiles, result.indicators, snapshot, percentiles);

    const fs::path& dir = config.output_dir;
    write_output(dir, "baselines.csv", baselines.str(), manifest);
    write_output(dir, "publication_scores.csv", scores.str(), manifest);
    write_output(dir, "indicators.csv", indicators.str(), manifest);
    write_output(dir, "percentiles.csv", percentiles.str(), manifest);
    RunManifest written = manifest;
    write_output(dir, "manifest.json", manifest.to_json(), written);

    print_warnings(io.err, manifest.warnings);
    io.out << fmt::format("researchers={} publications={} strata={} output={}\n", snapshot.researchers().size(),
                          snapshot.publications().size(), result.baselines.size(), dir.string());
    return kExitOk;
  });
}

int run_synth(const SynthArgs& args, Streams io) {
  return guarded(io.err, [&] {
    synth::GeneratorConfig config;
    if (args.generator_config) {
      std::ifstream in(*args.generator_config);
      if (!in) throw Error(ErrorCode::io, fmt::format("cannot open '{}'", args.generator_config->string()));
      std::stringstream text;
      text << in.rdbuf();
      config = synth::generator_config_from_json(text.str());
    } else if (args.preset == "national") {
      config = synth::national_scale_config(args.seed);
    } else if (args.preset == "small") {
      config = synth::random_small_config(args.seed);
    } else {
      throw Error(ErrorCode::config, fmt::format("unknown preset '{}'; want small or national", args.preset));
    }
    const CorpusSnapshot snapshot = synth::generate(config);

    std::ostringstream pubs, registry;
    write_publications_jsonl(snapshot, pubs);
    write_researchers_csv(snapshot, registry);
    RunManifest unused;
    write_output(args.output_dir, "publications.jsonl", pubs.str(), unused);
    write_output(args.output_dir, "researchers.csv", registry.str(), unused);
    write_output(args.output_dir, "generator.json", synth::generator_config_to_json(config), unused);
    io.out << fmt::format("researchers={} publications={} output={}\n", snapshot.researchers().size(),
                          snapshot.publications().size(), args.output_dir.string());
    return kExitOk;
  });
}

int run_oracle_check(const OracleCheckArgs& args, Streams io) {
  return guarded(io.err, [&] {
    const RunConfig config = resolve_config(args.overrides);
    std::vector<RankingMode> modes;
    if (args.modes == "both") {
      modes = {RankingMode::by_sds, RankingMode::by_sds_and_rank};
    } else if (auto mode = parse_ranking_mode(args.modes)) {
      modes = {*mode};
    } else {
      throw Error(ErrorCode::config, fmt::format("unknown mode selection '{}'", args.modes));
    }

    std::size_t failures = 0, checks = 0;
    auto check = [&](const CorpusSnapshot& snapshot, const std::string& label) {
      for (RankingMode mode : modes) {
        const auto pipeline = run_pipeline(snapshot, config.scheme, mode).percentiles;
        const auto oracle = synth::oracle_percentiles(snapshot, config.scheme, mode);
        const auto cmp = synth::compare_percentiles(pipeline, oracle);
        ++checks;
        io.out << fmt::format("{} mode={} researchers={} publications={} compared={} mismatches={}\n", label,
                              to_string(mode), snapshot.researchers().size(), snapshot.publications().size(),
                              cmp.compared, cmp.mismatches);
        for (const auto& d : cmp.details) io.out << "  " << d << '\n';
        if (!cmp.ok()) ++failures;
      }
    };

    if (args.snapshot) {
      check(read_snapshot(*args.snapshot), args.snapshot->string());
    } else {
      for (std::size_t i = 0; i < args.corpora; ++i) {
        const std::uint64_t seed = args.first_seed + i;
        check(synth::generate(synth::random_small_config(seed)), fmt::format("seed={}", seed));
      }
    }
    io.out << fmt::format("oracle-check: {} of {} checks matched\n", checks - failures, checks);
    return failures == 0 ? kExitOk : kExitCheckFailed;
  });
}

}  // namespace bibliorank::cli
