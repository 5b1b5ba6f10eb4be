// Copyright 2026 The cqtool Authors
// SPDX-License-Identifier: Apache-2.0

// Usage: cq_stub MODE [ARG] FILE
//
//   accept            exit 0
//   reject            print a diagnostic, exit 1
//   sleep             block until killed
//   crash             abort (SIGABRT)
//   contains TEXT     exit 0 if FILE contains TEXT, else 1

#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: cq_stub MODE [ARG] FILE\n";
    return 2;
  }
  const std::string mode = argv[1];
  if (mode == "accept") return 0;
  if (mode == "reject") {
    std::cerr << argv[argc - 1] << ": error: rejected by stub\n";
    return 1;
  }
  if (mode == "sleep") {
    for (;;) std::this_thread::sleep_for(std::chrono::hours(1));
  }
  if (mode == "crash") std::abort();
  if (mode == "contains" && argc == 4) {
    std::ifstream in(argv[3], std::ios::binary);
    if (!in) {
      std::cerr << "cq_stub: cannot read " << argv[3] << "\n";
      return 2;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str().find(argv[2]) != std::string::npos ? 0 : 1;
  }
  std::cerr << "cq_stub: unknown mode '" << mode << "'\n";
  return 2;
}
