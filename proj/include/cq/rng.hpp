// Copyright 2026 The cqtool Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace cq {

// Independent 64-bit seed for stream `stream` of `seed` (SplitMix64 mixing).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

// std::mt19937_64 is bit-exact across standard libraries; the distribution
// helpers below are written out so results do not depend on the library's
// std::uniform_int_distribution.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform value in [0, bound). bound > 0.
  std::uint64_t below(std::uint64_t bound);

  // k distinct positions out of [0, n), ascending. k <= n.
  std::vector<std::size_t> choose(std::size_t n, std::size_t k);

 private:
  std::mt19937_64 engine_;
};

}  // namespace cq
