// Copyright 2026 The cqtool Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "cq/sampler.hpp"
#include "cq/treegrammar.hpp"

namespace cq {

// Language config file (JSON):
//
//   {
//     "language": {"name": "C", "extension": "c",
//                  "command": ["gcc", "-std=c11", "-fsyntax-only", "{file}"],
//                  "timeout_seconds": 30, "success_exit": 0},
//     "wrapper":  {"prefix": "int main(void) {\n", "suffix": "\n}"},
//     "render":   {"separator": " ", "no_space": [[":ident", "("]]}
//   }
struct LanguageConfig {
  std::string name;
  std::string file_extension;
  // argv template; "{file}" occurs exactly once across all arguments.
  std::vector<std::string> compile_command;
  std::optional<std::pair<std::string, std::string>> entry_wrapper;
  double timeout_seconds = 30.0;
  int expected_success_exit = 0;
  RenderRules render;
  // Directory used to resolve relative command paths (the config's folder).
  std::filesystem::path base_dir = ".";
  // Searched before $PATH for bare command names.
  std::vector<std::filesystem::path> search_dirs;

  // Throws ConfigError.
  void validate() const;
  // Digest of the fields that influence verdicts.
  std::string hash() const;
  // Absolute path of the compiler executable; throws ConfigError if missing.
  std::filesystem::path resolved_compiler() const;
  // Text written to disk for `program`: wrapper applied, one trailing newline.
  std::string file_contents(std::string_view program) const;
};

LanguageConfig parse_language_config(std::string_view json_text,
                                     const std::filesystem::path& base_dir);
LanguageConfig load_language_config(const std::filesystem::path& path);

enum class Verdict { Accepted, Rejected, Timeout, Crashed };

const char* verdict_name(Verdict v);
Verdict parse_verdict(std::string_view name);

struct CompileResult {
  EnumIndex index;
  std::size_t bucket = 0;
  std::size_t size = 0;
  Verdict verdict = Verdict::Rejected;
  std::optional<int> exit_code;
  long long duration_ms = 0;
  std::string stderr_head;
  std::string sha256;
};

struct VerdictCounts {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::size_t timeout = 0;
  std::size_t crashed = 0;

  std::size_t total() const { return accepted + rejected + timeout + crashed; }
  void add(Verdict v);
  VerdictCounts& operator+=(const VerdictCounts& o);
  friend bool operator==(const VerdictCounts&, const VerdictCounts&) = default;
};

struct CampaignResult {
  std::string language;
  std::string run_id;
  // Ordered by (bucket, index).
  std::vector<CompileResult> results;
  VerdictCounts counts;
};

constexpr std::size_t kStderrHeadLimit = 4096;

// Compiles one rendered program in a fresh temporary directory, which is
// removed afterwards. Throws ConfigError when the compiler cannot be found.
CompileResult compile_one(std::string_view program, const LanguageConfig& cfg);

// Verdicts remembered across invocations, keyed by program digest and
// config hash. Not thread-safe; run_campaign serializes access.
class VerdictCache {
 public:
  struct Entry {
    Verdict verdict;
    std::optional<int> exit_code;
    long long duration_ms;
  };

  VerdictCache() = default;
  // Loads previously appended entries; a missing file is an empty cache.
  explicit VerdictCache(std::filesystem::path file);

  const Entry* find(const std::string& sha256, const std::string& config_hash) const;
  // Records in memory and appends to the backing file, if any.
  void put(const std::string& sha256, const std::string& config_hash, const Entry& e);
  std::size_t size() const { return entries_.size(); }

 private:
  std::filesystem::path file_;
  std::unordered_map<std::string, Entry> entries_;
};

struct CampaignStats {
  std::size_t compiled = 0;
  std::size_t cached = 0;
};

// Compiles every sample once with `workers` concurrent compiler processes.
// The result is independent of `workers` except for durations.
CampaignResult run_campaign(const SampleSet& samples, const LanguageConfig& cfg,
                            std::size_t workers, VerdictCache* cache = nullptr,
                            CampaignStats* stats = nullptr);

// JSON-lines serialization: one object per result.
std::string campaign_to_jsonl(const CampaignResult& c);
CampaignResult campaign_from_jsonl(std::string_view text, std::string language,
                                   std::string run_id);

}  // namespace cq
