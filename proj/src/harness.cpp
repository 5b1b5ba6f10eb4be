// Copyright 2026 The cqtool Authors
// SPDX-License-Identifier: Apache-2.0

#include "cq/harness.hpp"

#include <stdlib.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include <fmt/format.h>

#include "cq/error.hpp"
#include "cq/hash.hpp"
#include "cq/subprocess.hpp"
#include "json.hpp"

namespace cq {

namespace fs = std::filesystem;
using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

namespace {

constexpr std::string_view kPlaceholder = "{file}";

std::size_t count_placeholders(const std::vector<std::string>& argv) {
  std::size_t n = 0;
  for (const auto& a : argv)
    for (auto pos = a.find(kPlaceholder); pos != std::string::npos;
         pos = a.find(kPlaceholder, pos + kPlaceholder.size()))
      ++n;
  return n;
}

// Temporary directory removed on scope exit.
class ScratchDir {
 public:
  ScratchDir() {
    std::string tmpl = (fs::temp_directory_path() / "cq-XXXXXX").string();
    if (!::mkdtemp(tmpl.data())) throw IoError("cannot create temporary directory");
    path_ = tmpl;
  }
  ScratchDir(const ScratchDir&) = delete;
  ScratchDir& operator=(const ScratchDir&) = delete;
  ~ScratchDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

template <typename T>
T get_or(const json& obj, const char* key, T fallback) {
  if (!obj.is_object() || !obj.contains(key)) return fallback;
  return obj.at(key).get<T>();
}

}  // namespace

void LanguageConfig::validate() const {
  if (name.empty()) throw ConfigError("language name is empty");
  if (file_extension.empty()) throw ConfigError("file extension is empty");
  if (compile_command.empty()) throw ConfigError("compile command is empty");
  const std::size_t n = count_placeholders(compile_command);
  if (n != 1)
    throw ConfigError(
        fmt::format("compile command must contain {{file}} exactly once (found {})", n));
  if (!(timeout_seconds > 0)) throw ConfigError("timeout must be positive");
}

std::string LanguageConfig::hash() const {
  ojson j;
  j["name"] = name;
  j["extension"] = file_extension;
  j["command"] = compile_command;
  j["wrapper"] = entry_wrapper ? ojson{entry_wrapper->first, entry_wrapper->second} : ojson();
  j["timeout_seconds"] = timeout_seconds;
  j["success_exit"] = expected_success_exit;
  return sha256_hex(j.dump()).substr(0, 16);
}

fs::path LanguageConfig::resolved_compiler() const {
  if (compile_command.empty()) throw ConfigError("compile command is empty");
  auto p = resolve_executable(compile_command.front(), base_dir, search_dirs);
  if (!p)
    throw ConfigError(
        fmt::format("compiler executable '{}' not found", compile_command.front()));
  return *p;
}

std::string LanguageConfig::file_contents(std::string_view program) const {
  std::string out;
  if (entry_wrapper) out += entry_wrapper->first;
  out += program;
  if (entry_wrapper) out += entry_wrapper->second;
  out += '\n';
  return out;
}

LanguageConfig parse_language_config(std::string_view json_text, const fs::path& base_dir) {
  LanguageConfig cfg;
  cfg.base_dir = base_dir;
  try {
    const json j = json::parse(json_text);
    const json& lang = j.at("language");
    cfg.name = lang.at("name").get<std::string>();
    cfg.file_extension = lang.at("extension").get<std::string>();
    cfg.compile_command = lang.at("command").get<std::vector<std::string>>();
    cfg.timeout_seconds = get_or(lang, "timeout_seconds", 30.0);
    cfg.expected_success_exit = get_or(lang, "success_exit", 0);
    if (j.contains("wrapper") && !j.at("wrapper").is_null()) {
      const json& w = j.at("wrapper");
      cfg.entry_wrapper = std::make_pair(get_or<std::string>(w, "prefix", ""),
                                         get_or<std::string>(w, "suffix", ""));
    }
    if (j.contains("render")) {
      const json& r = j.at("render");
      cfg.render.separator = get_or<std::string>(r, "separator", " ");
      if (r.contains("no_space")) {
        for (const json& pair : r.at("no_space")) {
          if (!pair.is_array() || pair.size() != 2)
            throw ConfigError("render.no_space entries must be [left, right] pairs");
          cfg.render.no_space_pairs.emplace_back(
              TokenPattern::parse(pair.at(0).get<std::string>()),
              TokenPattern::parse(pair.at(1).get<std::string>()));
        }
      }
    }
  } catch (const json::exception& ex) {
    throw ConfigError(fmt::format("malformed language config: {}", ex.what()));
  }
  cfg.validate();
  return cfg;
}

LanguageConfig load_language_config(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot read language config '{}'", path.string()));
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_language_config(buf.str(), fs::absolute(path).parent_path());
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Accepted: return "accepted";
    case Verdict::Rejected: return "rejected";
    case Verdict::Timeout: return "timeout";
    case Verdict::Crashed: return "crashed";
  }
  return "?";
}

Verdict parse_verdict(std::string_view name) {
  if (name == "accepted") return Verdict::Accepted;
  if (name == "rejected") return Verdict::Rejected;
  if (name == "timeout") return Verdict::Timeout;
  if (name == "crashed") return Verdict::Crashed;
  throw IoError(fmt::format("unknown verdict '{}'", name));
}

void VerdictCounts::add(Verdict v) {
  switch (v) {
    case Verdict::Accepted: ++accepted; break;
    case Verdict::Rejected: ++rejected; break;
    case Verdict::Timeout: ++timeout; break;
    case Verdict::Crashed: ++crashed; break;
  }
}

VerdictCounts& VerdictCounts::operator+=(const VerdictCounts& o) {
  accepted += o.accepted;
  rejected += o.rejected;
  timeout += o.timeout;
  crashed += o.crashed;
  return *this;
}

namespace {

CompileResult compile_with(std::string_view program, const LanguageConfig& cfg,
                           const fs::path& compiler) {
  ScratchDir dir;
  const fs::path file = dir.path() / ("prog." + cfg.file_extension);
  {
    const std::string contents = cfg.file_contents(program);
    std::ofstream out(file, std::ios::binary);
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw IoError(fmt::format("cannot write '{}'", file.string()));
  }
  std::vector<std::string> argv = cfg.compile_command;
  argv.front() = compiler.string();
  for (std::size_t i = 0; i < argv.size(); ++i) {
    const auto pos = argv[i].find(kPlaceholder);
    if (pos != std::string::npos) argv[i].replace(pos, kPlaceholder.size(), file.string());
  }

  const auto timeout = std::chrono::milliseconds(
      static_cast<long long>(std::llround(cfg.timeout_seconds * 1000.0)));
  const ProcessOutcome p = run_process(argv, dir.path(), timeout, kStderrHeadLimit);

  CompileResult r;
  r.size = size_of(program);
  r.duration_ms = p.duration.count();
  r.stderr_head = p.stderr_head;
  switch (p.status) {
    case ProcessOutcome::Status::TimedOut:
      r.verdict = Verdict::Timeout;
      break;
    case ProcessOutcome::Status::Signaled:
      r.verdict = Verdict::Crashed;
      break;
    case ProcessOutcome::Status::Exited:
      r.exit_code = p.exit_code;
      r.verdict = p.exit_code == cfg.expected_success_exit ? Verdict::Accepted : Verdict::Rejected;
      break;
  }
  return r;
}

std::string cache_key(const std::string& sha, const std::string& cfg_hash) {
  return sha + ":" + cfg_hash;
}

}  // namespace

CompileResult compile_one(std::string_view program, const LanguageConfig& cfg) {
  cfg.validate();
  CompileResult r = compile_with(program, cfg, cfg.resolved_compiler());
  r.sha256 = sha256_hex(program);
  return r;
}

VerdictCache::VerdictCache(fs::path file) : file_(std::move(file)) {
  std::ifstream in(file_);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      const json j = json::parse(line);
      Entry e{parse_verdict(j.at("verdict").get<std::string>()),
              j.at("exit_code").is_null() ? std::nullopt
                                          : std::optional<int>(j.at("exit_code").get<int>()),
              j.at("duration_ms").get<long long>()};
      entries_[cache_key(j.at("sha256").get<std::string>(), j.at("config").get<std::string>())] = e;
    } catch (const std::exception&) {
      // A torn final line from an interrupted run; the sample is recompiled.
    }
  }
}

const VerdictCache::Entry* VerdictCache::find(const std::string& sha256,
                                              const std::string& config_hash) const {
  const auto it = entries_.find(cache_key(sha256, config_hash));
  return it == entries_.end() ? nullptr : &it->second;
}

void VerdictCache::put(const std::string& sha256, const std::string& config_hash,
                       const Entry& e) {
  entries_[cache_key(sha256, config_hash)] = e;
  if (file_.empty()) return;
  ojson j;
  j["sha256"] = sha256;
  j["config"] = config_hash;
  j["verdict"] = verdict_name(e.verdict);
  j["exit_code"] = e.exit_code ? ojson(*e.exit_code) : ojson();
  j["duration_ms"] = e.duration_ms;
  std::ofstream out(file_, std::ios::app);
  out << j.dump() << '\n';
  if (!out) throw IoError(fmt::format("cannot append to verdict cache '{}'", file_.string()));
}

CampaignResult run_campaign(const SampleSet& samples, const LanguageConfig& cfg,
                            std::size_t workers, VerdictCache* cache, CampaignStats* stats) {
  if (workers < 1) throw ConfigError("workers must be at least 1");
  cfg.validate();
  CampaignResult out;
  out.language = cfg.name;
  out.results.resize(samples.samples.size());
  if (samples.samples.empty()) return out;

  const fs::path compiler = cfg.resolved_compiler();
  const std::string cfg_hash = cfg.hash();

  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> compiled{0}, cached{0};
  std::mutex cache_mu;
  std::exception_ptr failure;
  std::mutex failure_mu;

  auto job = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < samples.samples.size();) {
      const Sample& s = samples.samples[i];
      try {
        const std::string sha = sha256_hex(s.text);
        std::optional<VerdictCache::Entry> hit;
        if (cache) {
          std::lock_guard lock(cache_mu);
          if (const auto* e = cache->find(sha, cfg_hash)) hit = *e;
        }
        CompileResult r;
        if (hit) {
          r.verdict = hit->verdict;
          r.exit_code = hit->exit_code;
          r.duration_ms = hit->duration_ms;
          ++cached;
        } else {
          r = compile_with(s.text, cfg, compiler);
          ++compiled;
          if (cache) {
            std::lock_guard lock(cache_mu);
            cache->put(sha, cfg_hash, {r.verdict, r.exit_code, r.duration_ms});
          }
        }
        r.index = s.index;
        r.bucket = s.bucket;
        r.size = s.size;
        r.sha256 = sha;
        out.results[i] = std::move(r);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next.store(samples.samples.size());
      }
    }
  };

  const std::size_t threads = std::min(workers, samples.samples.size());
  if (threads == 1) {
    job();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(job);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::sort(out.results.begin(), out.results.end(), [](const CompileResult& a, const CompileResult& b) {
    if (a.bucket != b.bucket) return a.bucket < b.bucket;
    return a.index < b.index;
  });
  for (const auto& r : out.results) out.counts.add(r.verdict);
  if (stats) {
    stats->compiled = compiled.load();
    stats->cached = cached.load();
  }
  return out;
}

std::string campaign_to_jsonl(const CampaignResult& c) {
  std::string out;
  for (const CompileResult& r : c.results) {
    ojson j;
    j["index"] = r.index.str();
    j["bucket"] = r.bucket;
    j["size"] = r.size;
    j["verdict"] = verdict_name(r.verdict);
    j["exit_code"] = r.exit_code ? ojson(*r.exit_code) : ojson();
    j["duration_ms"] = r.duration_ms;
    j["sha256"] = r.sha256;
    j["stderr_head"] = r.stderr_head;
    out += j.dump(-1, ' ', false, ojson::error_handler_t::replace);
    out += '\n';
  }
  return out;
}

CampaignResult campaign_from_jsonl(std::string_view text, std::string language,
                                   std::string run_id) {
  CampaignResult c;
  c.language = std::move(language);
  c.run_id = std::move(run_id);
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      const json j = json::parse(line);
      CompileResult r;
      r.index = BigInt(j.at("index").get<std::string>());
      r.bucket = j.at("bucket").get<std::size_t>();
      r.size = j.at("size").get<std::size_t>();
      r.verdict = parse_verdict(j.at("verdict").get<std::string>());
      if (!j.at("exit_code").is_null()) r.exit_code = j.at("exit_code").get<int>();
      r.duration_ms = j.at("duration_ms").get<long long>();
      r.sha256 = get_or<std::string>(j, "sha256", "");
      r.stderr_head = get_or<std::string>(j, "stderr_head", "");
      c.counts.add(r.verdict);
      c.results.push_back(std::move(r));
    } catch (const json::exception& ex) {
      throw IoError(fmt::format("line {}: malformed campaign record: {}", lineno, ex.what()));
    }
  }
  return c;
}

}  // namespace cq
