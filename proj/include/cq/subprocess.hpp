// Copyright 2026 The cqtool Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <chrono>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace cq {

struct ProcessOutcome {
  enum class Status { Exited, Signaled, TimedOut };

  Status status = Status::Exited;
  int exit_code = 0;  // Exited
  int signal = 0;     // Signaled
  std::chrono::milliseconds duration{0};
  // Leading bytes of stderr, at most the requested limit.
  std::string stderr_head;
};

// Runs argv[0] (already resolved to a path) in `cwd` with stdin and stdout
// on /dev/null. The child leads its own process group; on timeout the whole
// group is killed.
ProcessOutcome run_process(const std::vector<std::string>& argv, const std::filesystem::path& cwd,
                           std::chrono::milliseconds timeout, std::size_t stderr_limit);

// Resolves a command name: paths containing '/' are taken relative to
// `base_dir`; bare names are searched in `extra_dirs` then $PATH.
std::optional<std::filesystem::path> resolve_executable(
    const std::string& command, const std::filesystem::path& base_dir,
    const std::vector<std::filesystem::path>& extra_dirs);

}  // namespace cq
