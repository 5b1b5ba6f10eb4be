// Copyright 2026 The cqtool Authors
// SPDX-License-Identifier: Apache-2.0

// End-to-end campaigns: sample, compile, aggregate, report.
//
// Campaign spec file (JSON). Relative grammar and config paths are resolved
// against the spec file's directory, output_dir against the working directory.
//
//   {
//     "name": "minilang",
//     "grammar": "../grammars/minilang.cqg",
//     "language_config": "minilang.json",
//     "range": [0, 48], "buckets": 6, "per_bucket_target": 500,
//     "runs": 3, "seed": 1, "workers": 0,
//     "output_dir": "campaign/minilang",
//     "sampler": {"alpha": 8, "beta": 2, "max_tries": 16, "step_increase_threshold": 10},
//     "metrics": {"epsilon": 5, "lcq_step": 1}
//   }
//
// Campaign directory:
//
//   spec.json                        resolved snapshot of the spec
//   samples/manifest_run<r>.jsonl    one manifest per run
//   samples/<bucket>/<index>.<ext>   program files, shared between runs
//   results/run<r>.jsonl             one compile result per sample
//   results/runs.json                run ids and seeds
//   results/verdict_cache.jsonl      verdicts keyed by program digest and config hash
//   report/                          see emit_report

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cq/grammar.hpp"
#include "cq/harness.hpp"
#include "cq/metrics.hpp"
#include "cq/sampler.hpp"

namespace cq {

struct CampaignSpec {
  std::string name;
  std::filesystem::path grammar;
  std::filesystem::path language_config;
  std::uint64_t a = 0;
  std::uint64_t b = 256;
  std::size_t buckets = 16;
  std::size_t per_bucket_target = 100;
  std::size_t runs = 3;
  std::uint64_t seed = 1;
  std::size_t workers = 0;  // 0: one per logical CPU
  std::filesystem::path output_dir;
  // n, a, b and seed are taken from the fields above.
  SampleParams sampler;
  // size_bound is b.
  MetricParams metrics;

  // Throws ConfigError.
  void validate() const;
  std::size_t effective_workers() const;
  // Seed of run r.
  std::uint64_t run_seed(std::size_t r) const { return seed + r; }
  MetricParams metric_params() const;
};

CampaignSpec parse_campaign_spec(std::string_view json_text, const std::filesystem::path& base_dir);
CampaignSpec load_campaign_spec(const std::filesystem::path& path);
// Absolute paths, so the snapshot parses back to the same spec from anywhere.
std::string campaign_spec_json(const CampaignSpec& s);

struct GrammarSummary {
  std::size_t nonterminals = 0;
  std::size_t terminals = 0;
  std::size_t source_productions = 0;
  std::size_t constructors = 0;  // after desugaring
  std::optional<BigInt> finite_total;
  ValidationReport report;
};

// Throws ValidationError when the language is empty.
GrammarSummary summarize_grammar(const Grammar& g);

// Samples a language into `out` (manifest.jsonl plus program files).
struct SampleRequest {
  std::filesystem::path grammar;
  std::filesystem::path language_config;
  std::uint64_t a = 0;
  std::uint64_t b = 256;
  std::size_t buckets = 16;
  std::size_t target = 100;
  std::uint64_t seed = 1;
  std::filesystem::path out;
  std::size_t workers = 1;
};

SampleSet run_sample(const SampleRequest& req);

// Bare compiler names are looked up in `tool_dirs` before $PATH.
LanguageConfig load_campaign_language(const std::filesystem::path& config,
                                      const std::vector<std::filesystem::path>& tool_dirs);

struct MeasureOutcome {
  CQReport report;
  std::vector<SampleSet> samples;
  std::vector<CampaignStats> stats;
};

// Runs every run of the campaign, reusing sample manifests and cached
// verdicts already present in the output directory. Progress goes to `log`.
MeasureOutcome run_measure(const CampaignSpec& spec,
                           const std::vector<std::filesystem::path>& tool_dirs, std::ostream& log);

// Rebuilds report/ from the results of a finished campaign.
CQReport run_report(const std::filesystem::path& campaign_dir);

}  // namespace cq
