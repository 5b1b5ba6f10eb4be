// Copyright 2026 The cqtool Authors
// SPDX-License-Identifier: Apache-2.0

// cqtool: sample programs from a grammar, compile them, report CQ and LCQ.
//
// Exit codes: 0 ok, 1 usage or configuration error, 2 validation failure,
// 3 I/O error.

#include <unistd.h>

#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "cq/campaign.hpp"
#include "cq/error.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitIo = 3;

// Sibling tools (minilang_check, cq_stub) live next to this executable.
std::vector<fs::path> tool_dirs() {
  std::error_code ec;
  const fs::path self = fs::read_symlink("/proc/self/exe", ec);
  if (ec) return {};
  return {self.parent_path()};
}

std::string join(const std::vector<std::string>& names) {
  std::string out;
  for (const auto& n : names) out += (out.empty() ? "" : ", ") + n;
  return out;
}

int cmd_check(const std::string& path) {
  const cq::Grammar g = cq::load_grammar(path);
  const cq::GrammarSummary s = cq::summarize_grammar(g);
  std::cout << fmt::format("grammar: {}\n", path);
  std::cout << fmt::format("nonterminals: {}\n", s.nonterminals);
  std::cout << fmt::format("terminals: {}\n", s.terminals);
  std::cout << fmt::format("productions: {}\n", s.source_productions);
  std::cout << fmt::format("constructors: {}\n", s.constructors);
  if (s.finite_total)
    std::cout << fmt::format("language: finite, {} programs\n", s.finite_total->str());
  else
    std::cout << "language: infinite\n";
  if (!s.report.unproductive.empty())
    std::cerr << fmt::format("warning: unproductive: {}\n", join(s.report.unproductive));
  if (!s.report.unreachable.empty())
    std::cerr << fmt::format("warning: unreachable: {}\n", join(s.report.unreachable));
  return 0;
}

std::pair<std::uint64_t, std::uint64_t> parse_range(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw cq::ConfigError("range must be A:B");
  try {
    std::size_t used = 0;
    const std::string lo = text.substr(0, colon), hi = text.substr(colon + 1);
    const auto a = std::stoull(lo, &used);
    if (used != lo.size()) throw std::invalid_argument(lo);
    const auto b = std::stoull(hi, &used);
    if (used != hi.size()) throw std::invalid_argument(hi);
    return {a, b};
  } catch (const std::logic_error&) {
    throw cq::ConfigError(fmt::format("malformed range '{}'", text));
  }
}

int cmd_sample(cq::SampleRequest req, const std::string& range) {
  std::tie(req.a, req.b) = parse_range(range);
  const cq::SampleSet set = cq::run_sample(req);
  std::cout << fmt::format("wrote {} samples to {}\n", set.samples.size(), req.out.string());
  if (set.total_shortfall() > 0) {
    std::cerr << fmt::format("warning: {} samples short of the target\n", set.total_shortfall());
    const std::uint64_t width = (req.b - req.a) / req.buckets;
    for (std::size_t j = 0; j < set.shortfall.size(); ++j)
      if (set.shortfall[j] > 0)
        std::cerr << fmt::format("  bucket {} [{}, {}): {} of {}\n", j, req.a + j * width,
                                 req.a + (j + 1) * width, req.target - set.shortfall[j],
                                 req.target);
  }
  return 0;
}

void print_report(const cq::CQReport& r) {
  for (std::size_t i = 0; i < r.per_run_cq.size(); ++i)
    std::cout << fmt::format("run {} ({}): CQ {:.3f} over {} samples\n", i, r.run_ids[i],
                             r.per_run_cq[i], r.per_run_counts[i].total());
  std::cout << fmt::format("{}: mean CQ {:.3f}", r.language, r.cq);
  if (r.relative_std_dev) std::cout << fmt::format(", relative std. dev. {:.2f}%", *r.relative_std_dev);
  std::cout << "\n";
}

int cmd_measure(const std::string& spec_path, std::optional<std::size_t> workers,
                std::optional<std::size_t> runs, const std::string& out) {
  cq::CampaignSpec spec = cq::load_campaign_spec(spec_path);
  if (workers) spec.workers = *workers;
  if (runs) spec.runs = *runs;
  if (!out.empty()) spec.output_dir = out;
  spec.validate();
  const cq::MeasureOutcome result = cq::run_measure(spec, tool_dirs(), std::cerr);
  print_report(result.report);
  std::cout << fmt::format("report written to {}\n", (spec.output_dir / "report").string());
  return 0;
}

int cmd_report(const std::string& dir) {
  const cq::CQReport r = cq::run_report(dir);
  print_report(r);
  std::cout << fmt::format("report written to {}\n", (fs::path(dir) / "report").string());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Measure how much of a grammar's language a compiler accepts."};
  app.require_subcommand(1);

  std::string grammar_path;
  auto* check = app.add_subcommand("check", "Validate a grammar and print its statistics");
  check->add_option("grammar", grammar_path, "Grammar file (.cqg)")->required();

  cq::SampleRequest req;
  std::string range;
  auto* sample = app.add_subcommand("sample", "Sample programs into a directory");
  sample->add_option("--grammar", req.grammar, "Grammar file")->required();
  sample->add_option("--config", req.language_config, "Language config (JSON)")->required();
  sample->add_option("--range", range, "Byte-size range A:B, B exclusive")->required();
  sample->add_option("--buckets", req.buckets, "Number of equal-width buckets")
      ->capture_default_str();
  sample->add_option("--target", req.target, "Samples per bucket")->capture_default_str();
  sample->add_option("--seed", req.seed, "Random seed")->capture_default_str();
  sample->add_option("--out", req.out, "Output directory")->required();
  sample->add_option("--workers", req.workers, "Concurrent bucket jobs")->capture_default_str();

  std::string spec_path, measure_out;
  std::optional<std::size_t> workers, runs;
  auto* measure = app.add_subcommand("measure", "Run a campaign and write its report");
  measure->add_option("--spec", spec_path, "Campaign spec (JSON)")->required();
  measure->add_option("--workers", workers, "Concurrent compiler processes");
  measure->add_option("--runs", runs, "Number of runs (distinct seeds)");
  measure->add_option("--out", measure_out, "Override the spec's output directory");

  std::string campaign_dir;
  auto* report = app.add_subcommand("report", "Rebuild the report of a finished campaign");
  report->add_option("--campaign", campaign_dir, "Campaign directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*check) return cmd_check(grammar_path);
    if (*sample) return cmd_sample(req, range);
    if (*measure) return cmd_measure(spec_path, workers, runs, measure_out);
    if (*report) return cmd_report(campaign_dir);
  } catch (const cq::GrammarError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const cq::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const cq::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const cq::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
