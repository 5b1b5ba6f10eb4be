// Copyright 2026 The cqtool Authors
// SPDX-License-Identifier: Apache-2.0

#include "cq/sample_io.hpp"

#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "cq/error.hpp"
#include "cq/hash.hpp"
#include "json.hpp"

namespace cq {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

namespace {

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot read '{}'", p.string()));
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& p, std::string_view content) {
  std::error_code ec;
  fs::create_directories(p.parent_path(), ec);
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(fmt::format("cannot write '{}'", p.string()));
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError(fmt::format("write to '{}' failed", p.string()));
}

}  // namespace

std::string sample_relative_path(const Sample& s, std::string_view extension) {
  return fmt::format("samples/{}/{}.{}", s.bucket, s.index.str(), extension);
}

std::string manifest_line(const Sample& s, std::string_view extension) {
  ojson j;
  j["index"] = s.index.str();
  j["size"] = s.size;
  j["bucket"] = s.bucket;
  j["sha256"] = sha256_hex(s.text);
  j["path"] = sample_relative_path(s, extension);
  return j.dump();
}

void write_sample_dir(const SampleSet& set, const fs::path& root, std::string_view manifest_name,
                      std::string_view extension) {
  std::string manifest;
  for (const Sample& s : set.samples) {
    const fs::path file = root / sample_relative_path(s, extension);
    const std::string content = s.text + "\n";
    std::error_code ec;
    if (!(fs::exists(file, ec) && fs::file_size(file, ec) == content.size() &&
          read_file(file) == content))
      write_file(file, content);
    manifest += manifest_line(s, extension);
    manifest += '\n';
  }
  write_file(root / std::string(manifest_name), manifest);
}

void write_sample_summary(const SampleSet& set, const fs::path& root,
                          std::string_view manifest_name) {
  ojson j;
  j["samples"] = set.samples.size();
  j["range"] = {set.params.a, set.params.b};
  j["per_bucket_target"] = set.params.n;
  j["seed"] = set.params.seed;
  j["shortfall"] = set.shortfall;
  j["total_shortfall"] = set.total_shortfall();
  write_file(root / (std::string(manifest_name) + ".summary.json"), j.dump(2) + "\n");
}

SampleSet read_sample_dir(const fs::path& root, std::string_view manifest_name) {
  const std::string text = read_file(root / std::string(manifest_name));
  SampleSet set;
  std::istringstream lines(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(lines, line)) {
    ++lineno;
    if (line.empty()) continue;
    ojson j;
    try {
      j = ojson::parse(line);
      Sample s;
      s.index = BigInt(j.at("index").get<std::string>());
      s.size = j.at("size").get<std::size_t>();
      s.bucket = j.at("bucket").get<std::size_t>();
      std::string program = read_file(root / j.at("path").get<std::string>());
      if (!program.empty() && program.back() == '\n') program.pop_back();
      if (sha256_hex(program) != j.at("sha256").get<std::string>())
        throw IoError(fmt::format("{}: digest mismatch for '{}'", lineno,
                                  j.at("path").get<std::string>()));
      s.text = std::move(program);
      set.samples.push_back(std::move(s));
    } catch (const nlohmann::json::exception& ex) {
      throw IoError(fmt::format("{}:{}: malformed manifest line: {}",
                                (root / std::string(manifest_name)).string(), lineno, ex.what()));
    }
  }

  const fs::path summary = root / (std::string(manifest_name) + ".summary.json");
  std::error_code ec;
  if (fs::exists(summary, ec)) {
    try {
      const auto j = ojson::parse(read_file(summary));
      set.shortfall = j.at("shortfall").get<std::vector<std::size_t>>();
      set.params.n = j.at("per_bucket_target").get<std::size_t>();
      set.params.seed = j.at("seed").get<std::uint64_t>();
      set.params.a = j.at("range").at(0).get<std::uint64_t>();
      set.params.b = j.at("range").at(1).get<std::uint64_t>();
    } catch (const nlohmann::json::exception& ex) {
      throw IoError(fmt::format("malformed sample summary '{}': {}", summary.string(), ex.what()));
    }
  }
  return set;
}

}  // namespace cq
