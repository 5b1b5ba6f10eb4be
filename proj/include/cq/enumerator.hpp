// Copyright 2026 The cqtool Authors
// SPDX-License-Identifier: Apache-2.0

// Size-indexed enumeration of derivation trees.
//
// A tree's size is its number of constructors. For every nonterminal N and
// size k the enumeration keeps
//
//   card(N, k) = sum over rules C of N of
//                sum over compositions k-1 = k_1 + ... + k_a (k_j >= 1) of
//                prod_j card(child_j, k_j)
//
// and the global order lists trees by size, then within a size by rule
// ordinal, then by the composition (k_1, ..., k_a) lexicographically, then by
// the children's local ranks with the first child most significant.
// Unranking inverts that order, so index i always denotes the same tree.

#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "cq/treegrammar.hpp"

namespace cq {

using BigInt = boost::multiprecision::cpp_int;

// Rank of a program under the enumeration. Always non-negative.
using EnumIndex = BigInt;

class Enumeration {
 public:
  explicit Enumeration(std::shared_ptr<const RegularTreeGrammar> rtg);

  Enumeration(const Enumeration&) = delete;
  Enumeration& operator=(const Enumeration&) = delete;

  const RegularTreeGrammar& rtg() const { return *rtg_; }
  std::shared_ptr<const RegularTreeGrammar> rtg_ptr() const { return rtg_; }

  // Number of trees rooted at nt with exactly k constructors.
  BigInt cardinality(NonterminalId nt, std::size_t k) const;

  // Number of start-rooted trees with at most k constructors.
  BigInt total_below(std::size_t k) const;

  // Total number of trees when the language is finite.
  const std::optional<BigInt>& total() const { return total_; }
  bool finite() const { return total_.has_value(); }

  // The tree at global rank i. Throws IndexOutOfRange for i >= total() on
  // finite languages.
  DerivationTree index_to_tree(const EnumIndex& i) const;

  // Constructor count of the tree at rank i, without building it.
  std::size_t stratum_of(const EnumIndex& i) const;

  // Fewest literal bytes among start-rooted trees with k constructors, or
  // UINT64_MAX when there are none. Rendering emits every literal once, so
  // this bounds size_of(render(t)) from below under any RenderRules.
  std::uint64_t min_literal_bytes(std::size_t k) const;

  // Largest size with tables computed so far.
  std::size_t max_k() const;

  // Precomputes tables up to size k.
  void ensure(std::size_t k) const;

 private:
  void extend_locked(std::size_t k) const;
  void extend_one_locked() const;
  DerivationTree unrank(NonterminalId nt, std::size_t k, BigInt rank) const;
  void detect_finite();

  std::shared_ptr<const RegularTreeGrammar> rtg_;
  std::optional<BigInt> total_;
  std::size_t finite_max_k_ = 0;

  mutable std::shared_mutex mu_;
  // card_[nt][k], cum_[nt][k]; index 0 present and zero.
  mutable std::vector<std::vector<BigInt>> card_;
  mutable std::vector<std::vector<BigInt>> cum_;
  // ways_[rule][j][m]: ways for children j..arity-1 of rule to total m.
  mutable std::vector<std::vector<std::vector<BigInt>>> ways_;
  // Same shapes as card_ and ways_, holding minimal literal byte counts.
  mutable std::vector<std::vector<std::uint64_t>> min_bytes_;
  mutable std::vector<std::vector<std::vector<std::uint64_t>>> min_ways_;
  std::vector<std::uint64_t> rule_bytes_;
  mutable std::size_t max_k_ = 0;
};

}  // namespace cq
