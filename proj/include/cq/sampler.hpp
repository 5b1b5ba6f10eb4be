// Copyright 2026 The cqtool Authors
// SPDX-License-Identifier: Apache-2.0

// Byte-size interval sampling over the enumeration.
//
// estimate_index finds an index near the first program of a given size with
// an exponential walk; sample_program_interval draws evenly spaced indices
// between two such estimates, keeps the programs whose size falls in
// [a, b), and widens the index range when too few survive. bucketed_sample
// splits [a, b) into equal byte buckets so long programs do not dominate.

#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "cq/enumerator.hpp"
#include "cq/treegrammar.hpp"

namespace cq {

// An enumeration paired with the rendering that defines program text.
class Language {
 public:
  Language(std::shared_ptr<const RegularTreeGrammar> rtg, RenderRules rules);

  static Language from_grammar(const Grammar& g, RenderRules rules);

  const Enumeration& enumeration() const { return *enumeration_; }
  const RegularTreeGrammar& rtg() const { return enumeration_->rtg(); }
  const RenderRules& render_rules() const { return rules_; }

  // Program text of f(i).
  std::string program(const EnumIndex& i) const;

 private:
  std::shared_ptr<Enumeration> enumeration_;
  RenderRules rules_;
};

struct SampleParams {
  std::size_t n = 1;
  std::uint64_t a = 0;  // inclusive
  std::uint64_t b = 1;  // exclusive
  std::size_t alpha = 8;
  std::size_t beta = 2;
  std::size_t max_tries = 16;
  std::size_t step_increase_threshold = 10;
  std::uint64_t seed = 0;
  // estimate_index gives up once the walk passes this index.
  BigInt search_ceiling = boost::multiprecision::pow(BigInt(10), 60);

  // Throws ConfigError on violated invariants.
  void validate() const;
};

struct IndexBounds {
  EnumIndex lo;
  EnumIndex hi;
};

struct Sample {
  EnumIndex index;
  std::string text;
  std::size_t size = 0;
  std::size_t bucket = 0;

  friend bool operator==(const Sample&, const Sample&) = default;
};

struct SampleSet {
  std::vector<Sample> samples;
  SampleParams params;
  // Missing samples per bucket when a target was not met.
  std::vector<std::size_t> shortfall;

  std::size_t total_shortfall() const;
};

// Index of a program of size >= x, slightly past the first such index.
// Throws SearchLimitExceeded when no program of size >= x is found below
// params.search_ceiling (or, for finite languages, below the last index).
EnumIndex estimate_index(const Language& lang, std::uint64_t x, const SampleParams& params);

// Samples up to params.n programs with params.a <= size < params.b, starting
// from the index range `bounds`. Never throws for a shortfall; samples are
// returned in index order and tagged with `bucket`.
SampleSet sample_program_interval(const Language& lang, const SampleParams& params,
                                  const IndexBounds& bounds, std::size_t bucket = 0);

// Splits [a, b) into num_buckets equal byte ranges and samples per_bucket_n
// programs from each. Bucket j uses RNG stream derive_seed(params.seed, j),
// so the result does not depend on `workers`. params.n/a/b are overridden.
SampleSet bucketed_sample(const Language& lang, std::uint64_t a, std::uint64_t b,
                          std::size_t num_buckets, std::size_t per_bucket_n,
                          const SampleParams& params, std::size_t workers = 1);

}  // namespace cq
