// Copyright 2026 The cqtool Authors
// SPDX-License-Identifier: Apache-2.0

#include "cq/campaign.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include <fmt/format.h>

#include "cq/enumerator.hpp"
#include "cq/error.hpp"
#include "cq/sample_io.hpp"
#include "json.hpp"

namespace cq {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

namespace {

std::string read_text(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot read '{}'", p.string()));
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text(const fs::path& p, const std::string& text) {
  std::error_code ec;
  fs::create_directories(p.parent_path(), ec);
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(fmt::format("cannot write '{}'", p.string()));
  out << text;
  if (!out) throw IoError(fmt::format("write to '{}' failed", p.string()));
}

fs::path resolve_against(const fs::path& base, const fs::path& p) {
  return (p.is_absolute() ? p : base / p).lexically_normal();
}

std::string manifest_name(std::size_t run) {
  return fmt::format("samples/manifest_run{}.jsonl", run);
}

std::string result_name(std::size_t run) { return fmt::format("results/run{}.jsonl", run); }

std::string make_run_id(std::uint64_t seed) {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y%m%dT%H%M%SZ", &utc);
  return fmt::format("seed{}-{}", seed, stamp);
}

Language make_language(const fs::path& grammar, const LanguageConfig& cfg) {
  return Language::from_grammar(load_grammar(grammar.string()), cfg.render);
}

SampleParams sample_params(const SampleParams& base, std::uint64_t a, std::uint64_t b,
                           std::size_t n, std::uint64_t seed) {
  SampleParams p = base;
  p.a = a;
  p.b = b;
  p.n = std::max<std::size_t>(n, 1);
  p.seed = seed;
  return p;
}

}  // namespace

void CampaignSpec::validate() const {
  if (grammar.empty()) throw ConfigError("campaign spec names no grammar");
  if (language_config.empty()) throw ConfigError("campaign spec names no language config");
  if (output_dir.empty()) throw ConfigError("campaign spec names no output directory");
  if (a >= b) throw ConfigError(fmt::format("empty size range [{}, {})", a, b));
  if (buckets < 1) throw ConfigError("at least one bucket is required");
  if ((b - a) % buckets != 0)
    throw ConfigError(
        fmt::format("range [{}, {}) is not divisible into {} buckets", a, b, buckets));
  if (runs < 1) throw ConfigError("at least one run is required");
  sample_params(sampler, a, b, per_bucket_target, seed).validate();
  metric_params().validate();
}

std::size_t CampaignSpec::effective_workers() const {
  if (workers > 0) return workers;
  return std::max(1u, std::thread::hardware_concurrency());
}

MetricParams CampaignSpec::metric_params() const {
  MetricParams m = metrics;
  m.size_bound = b;
  return m;
}

CampaignSpec parse_campaign_spec(std::string_view json_text, const fs::path& base_dir) {
  CampaignSpec s;
  try {
    const auto j = ojson::parse(json_text);
    s.grammar = resolve_against(base_dir, j.at("grammar").get<std::string>());
    s.language_config = resolve_against(base_dir, j.at("language_config").get<std::string>());
    s.name = j.value("name", s.grammar.stem().string());
    if (j.contains("range")) {
      const auto& r = j.at("range");
      if (!r.is_array() || r.size() != 2) throw ConfigError("range must be [a, b]");
      s.a = r.at(0).get<std::uint64_t>();
      s.b = r.at(1).get<std::uint64_t>();
    }
    s.buckets = j.value("buckets", s.buckets);
    s.per_bucket_target = j.value("per_bucket_target", s.per_bucket_target);
    s.runs = j.value("runs", s.runs);
    s.seed = j.value("seed", s.seed);
    s.workers = j.value("workers", s.workers);
    s.output_dir = j.value("output_dir", fmt::format("campaign/{}", s.name));
    if (j.contains("sampler")) {
      const auto& p = j.at("sampler");
      s.sampler.alpha = p.value("alpha", s.sampler.alpha);
      s.sampler.beta = p.value("beta", s.sampler.beta);
      s.sampler.max_tries = p.value("max_tries", s.sampler.max_tries);
      s.sampler.step_increase_threshold =
          p.value("step_increase_threshold", s.sampler.step_increase_threshold);
    }
    if (j.contains("metrics")) {
      const auto& m = j.at("metrics");
      s.metrics.epsilon = m.value("epsilon", s.metrics.epsilon);
      s.metrics.lcq_step = m.value("lcq_step", s.metrics.lcq_step);
    }
  } catch (const nlohmann::json::exception& ex) {
    throw ConfigError(fmt::format("malformed campaign spec: {}", ex.what()));
  }
  s.validate();
  return s;
}

CampaignSpec load_campaign_spec(const fs::path& path) {
  return parse_campaign_spec(read_text(path), fs::absolute(path).parent_path());
}

std::string campaign_spec_json(const CampaignSpec& s) {
  ojson j;
  j["name"] = s.name;
  j["grammar"] = fs::absolute(s.grammar).string();
  j["language_config"] = fs::absolute(s.language_config).string();
  j["range"] = {s.a, s.b};
  j["buckets"] = s.buckets;
  j["per_bucket_target"] = s.per_bucket_target;
  j["runs"] = s.runs;
  j["seed"] = s.seed;
  j["workers"] = s.workers;
  j["output_dir"] = fs::absolute(s.output_dir).string();
  j["sampler"] = {{"alpha", s.sampler.alpha},
                  {"beta", s.sampler.beta},
                  {"max_tries", s.sampler.max_tries},
                  {"step_increase_threshold", s.sampler.step_increase_threshold}};
  j["metrics"] = {{"epsilon", s.metrics.epsilon}, {"lcq_step", s.metrics.lcq_step}};
  return j.dump(2) + "\n";
}

GrammarSummary summarize_grammar(const Grammar& g) {
  GrammarSummary out;
  out.report = validate(g);
  if (out.report.empty_language) {
    std::string names;
    for (const auto& n : out.report.unproductive) names += (names.empty() ? "" : ", ") + n;
    throw ValidationError(fmt::format("the language is empty; unproductive: {}", names));
  }
  out.nonterminals = g.nonterminals.size();
  out.terminals = g.terminals.size();
  out.source_productions = g.productions.size();
  auto rtg = std::make_shared<const RegularTreeGrammar>(compile_to_rtg(g));
  out.constructors = rtg->rules().size();
  out.finite_total = Enumeration(rtg).total();
  return out;
}

SampleSet run_sample(const SampleRequest& req) {
  const LanguageConfig cfg = load_language_config(req.language_config);
  const Language lang = make_language(req.grammar, cfg);
  const SampleParams p = sample_params(SampleParams{}, req.a, req.b, req.target, req.seed);
  SampleSet set = bucketed_sample(lang, req.a, req.b, req.buckets, req.target, p, req.workers);
  write_sample_dir(set, req.out, "manifest.jsonl", cfg.file_extension);
  write_sample_summary(set, req.out, "manifest.jsonl");
  return set;
}

LanguageConfig load_campaign_language(const fs::path& config, const std::vector<fs::path>& tool_dirs) {
  LanguageConfig cfg = load_language_config(config);
  cfg.search_dirs = tool_dirs;
  return cfg;
}

MeasureOutcome run_measure(const CampaignSpec& spec, const std::vector<fs::path>& tool_dirs,
                           std::ostream& log) {
  spec.validate();
  const LanguageConfig cfg = load_campaign_language(spec.language_config, tool_dirs);
  // Configuration problems surface before anything is sampled or compiled.
  cfg.resolved_compiler();
  const fs::path& out = spec.output_dir;
  write_text(out / "spec.json", campaign_spec_json(spec));

  std::error_code mk;
  fs::create_directories(out / "results", mk);
  if (mk) throw IoError(fmt::format("cannot create '{}': {}", (out / "results").string(), mk.message()));

  std::optional<Language> lang;
  VerdictCache cache(out / "results" / "verdict_cache.jsonl");
  const std::size_t workers = spec.effective_workers();

  MeasureOutcome outcome;
  std::vector<CampaignResult> runs;
  ojson run_index = ojson::array();
  for (std::size_t r = 0; r < spec.runs; ++r) {
    const std::uint64_t seed = spec.run_seed(r);
    SampleSet set;
    std::error_code ec;
    if (fs::exists(out / manifest_name(r), ec)) {
      set = read_sample_dir(out, manifest_name(r));
      log << fmt::format("run {}: reusing {} samples\n", r, set.samples.size());
    } else {
      if (!lang) lang.emplace(make_language(spec.grammar, cfg));
      const SampleParams p =
          sample_params(spec.sampler, spec.a, spec.b, spec.per_bucket_target, seed);
      set = bucketed_sample(*lang, spec.a, spec.b, spec.buckets, spec.per_bucket_target, p,
                            workers);
      write_sample_dir(set, out, manifest_name(r), cfg.file_extension);
      write_sample_summary(set, out, manifest_name(r));
      log << fmt::format("run {}: sampled {} programs (seed {}, shortfall {})\n", r,
                         set.samples.size(), seed, set.total_shortfall());
    }

    CampaignStats stats;
    CampaignResult result = run_campaign(set, cfg, workers, &cache, &stats);
    result.run_id = make_run_id(seed);
    write_text(out / result_name(r), campaign_to_jsonl(result));
    log << fmt::format("run {}: compiled {}, cached {}, accepted {} of {}\n", r, stats.compiled,
                       stats.cached, result.counts.accepted, result.counts.total());
    run_index.push_back({{"run", r}, {"seed", seed}, {"run_id", result.run_id},
                         {"language", result.language}});
    runs.push_back(std::move(result));
    outcome.samples.push_back(std::move(set));
    outcome.stats.push_back(stats);
  }
  write_text(out / "results" / "runs.json", run_index.dump(2) + "\n");

  outcome.report = aggregate_runs(runs, spec.metric_params());
  emit_report(outcome.report, spec.metric_params(), out / "report");
  return outcome;
}

CQReport run_report(const fs::path& campaign_dir) {
  const CampaignSpec spec = parse_campaign_spec(read_text(campaign_dir / "spec.json"), campaign_dir);
  std::vector<CampaignResult> runs;
  try {
    const auto index = ojson::parse(read_text(campaign_dir / "results" / "runs.json"));
    for (const auto& entry : index) {
      const std::size_t r = entry.at("run").get<std::size_t>();
      runs.push_back(campaign_from_jsonl(read_text(campaign_dir / result_name(r)),
                                         entry.at("language").get<std::string>(),
                                         entry.at("run_id").get<std::string>()));
    }
  } catch (const nlohmann::json::exception& ex) {
    throw IoError(fmt::format("malformed run index in '{}': {}", campaign_dir.string(), ex.what()));
  }
  if (runs.empty()) throw IoError(fmt::format("'{}' holds no finished runs", campaign_dir.string()));
  CQReport report = aggregate_runs(runs, spec.metric_params());
  emit_report(report, spec.metric_params(), campaign_dir / "report");
  return report;
}

}  // namespace cq
