// Copyright 2026 The cqtool Authors
// SPDX-License-Identifier: Apache-2.0

// Usage: minilang_check FILE
// Exit 0 when FILE is a valid program, 1 when it is not, 2 on usage or I/O
// errors. Diagnostics go to stderr.

#include <fstream>
#include <iostream>
#include <sstream>

#include "cq/minilang.hpp"

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: minilang_check FILE\n";
    return 2;
  }
  std::ifstream in(argv[1], std::ios::binary);
  if (!in) {
    std::cerr << "minilang_check: cannot read " << argv[1] << "\n";
    return 2;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  const cq::minilang::CheckResult r = cq::minilang::check(buf.str());
  if (r.ok) return 0;
  std::cerr << argv[1] << ":" << r.line << ":" << r.column << ": error: " << r.message << "\n";
  return 1;
}
