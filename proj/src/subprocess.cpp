// Copyright 2026 The cqtool Authors
// SPDX-License-Identifier: Apache-2.0

#include "cq/subprocess.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/stat.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstdlib>
#include <cstring>
#include <sstream>

#include <fmt/format.h>

#include "cq/error.hpp"

namespace cq {

namespace fs = std::filesystem;

namespace {

class Fd {
 public:
  explicit Fd(int fd = -1) : fd_(fd) {}
  Fd(const Fd&) = delete;
  Fd& operator=(const Fd&) = delete;
  ~Fd() { reset(); }

  int get() const { return fd_; }
  void reset() {
    if (fd_ >= 0) ::close(fd_);
    fd_ = -1;
  }

 private:
  int fd_;
};

bool is_executable_file(const fs::path& p) {
  struct stat st {};
  return ::stat(p.c_str(), &st) == 0 && S_ISREG(st.st_mode) && ::access(p.c_str(), X_OK) == 0;
}

}  // namespace

std::optional<fs::path> resolve_executable(const std::string& command, const fs::path& base_dir,
                                           const std::vector<fs::path>& extra_dirs) {
  if (command.empty()) return std::nullopt;
  if (command.find('/') != std::string::npos) {
    fs::path p(command);
    if (p.is_relative()) p = base_dir / p;
    if (is_executable_file(p)) return fs::absolute(p).lexically_normal();
    return std::nullopt;
  }
  for (const fs::path& d : extra_dirs)
    if (is_executable_file(d / command)) return fs::absolute(d / command);
  const char* path_env = std::getenv("PATH");
  std::istringstream dirs(path_env ? path_env : "/usr/bin:/bin");
  std::string dir;
  while (std::getline(dirs, dir, ':')) {
    if (dir.empty()) dir = ".";
    if (is_executable_file(fs::path(dir) / command)) return fs::path(dir) / command;
  }
  return std::nullopt;
}

ProcessOutcome run_process(const std::vector<std::string>& argv, const fs::path& cwd,
                           std::chrono::milliseconds timeout, std::size_t stderr_limit) {
  using clock = std::chrono::steady_clock;
  if (argv.empty()) throw ConfigError("empty command");

  std::vector<char*> cargv;
  cargv.reserve(argv.size() + 1);
  for (const auto& a : argv) cargv.push_back(const_cast<char*>(a.c_str()));
  cargv.push_back(nullptr);
  const std::string dir = cwd.string();

  int pipefd[2];
  if (::pipe2(pipefd, O_CLOEXEC) != 0)
    throw Error(fmt::format("pipe2 failed: {}", std::strerror(errno)));
  Fd read_end(pipefd[0]);
  Fd write_end(pipefd[1]);

  const auto started = clock::now();
  const pid_t pid = ::fork();
  if (pid < 0) throw Error(fmt::format("fork failed: {}", std::strerror(errno)));
  if (pid == 0) {
    ::setpgid(0, 0);
    const int devnull = ::open("/dev/null", O_RDWR);
    if (devnull >= 0) {
      ::dup2(devnull, STDIN_FILENO);
      ::dup2(devnull, STDOUT_FILENO);
    }
    ::dup2(write_end.get(), STDERR_FILENO);
    if (::chdir(dir.c_str()) != 0) ::_exit(126);
    ::execv(cargv[0], cargv.data());
    ::_exit(127);
  }
  ::setpgid(pid, pid);
  write_end.reset();

  ProcessOutcome out;
  const auto deadline = started + timeout;
  bool timed_out = false;
  bool eof = false;
  char buf[4096];
  while (!eof) {
    const auto now = clock::now();
    if (now >= deadline) {
      timed_out = true;
      break;
    }
    const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - now);
    pollfd p{read_end.get(), POLLIN, 0};
    const int r = ::poll(&p, 1, static_cast<int>(std::max<long long>(1, left.count())));
    if (r < 0 && errno == EINTR) continue;
    if (r <= 0) continue;
    const ssize_t n = ::read(read_end.get(), buf, sizeof buf);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) {
      eof = true;
      break;
    }
    const std::size_t room = stderr_limit - std::min(stderr_limit, out.stderr_head.size());
    out.stderr_head.append(buf, std::min<std::size_t>(room, static_cast<std::size_t>(n)));
  }

  int status = 0;
  if (!timed_out) {
    // stderr closed; the process may still be running. WNOWAIT keeps the
    // leader unreaped so its group id stays valid for the kill below.
    for (;;) {
      siginfo_t info{};
      const int w = ::waitid(P_PID, static_cast<id_t>(pid), &info, WEXITED | WNOHANG | WNOWAIT);
      if (w == 0 && info.si_pid == pid) break;
      if (w < 0 && errno != EINTR) break;
      if (clock::now() >= deadline) {
        timed_out = true;
        break;
      }
      ::usleep(1000);
    }
  }
  // Also takes down leftover group members (e.g. background jobs of a script).
  ::kill(-pid, SIGKILL);
  while (::waitpid(pid, &status, 0) < 0 && errno == EINTR) {
  }
  if (timed_out) {
    out.status = ProcessOutcome::Status::TimedOut;
  } else if (WIFSIGNALED(status)) {
    out.status = ProcessOutcome::Status::Signaled;
    out.signal = WTERMSIG(status);
  } else {
    out.status = ProcessOutcome::Status::Exited;
    out.exit_code = WEXITSTATUS(status);
  }
  out.duration = std::chrono::duration_cast<std::chrono::milliseconds>(clock::now() - started);
  return out;
}

}  // namespace cq
