// Copyright 2026 The cqtool Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>
#include <tuple>

#include "cq/error.hpp"
#include "cq/grammar.hpp"
#include "cq/rng.hpp"
#include "cq/sampler.hpp"
#include "oracle.hpp"

namespace cq {
namespace {

const char* kParen = R"g(S: "a" | "(" S ")" ;)g";
const char* kBinary = R"g(S: "x" | S "+" S ;)g";
const char* kChain = R"g(S : "a" | "b" S | "(" S ")" ;)g";
const char* kExpr = R"g(E : T ( "+" T )* ; T : "n" | "(" E ")" | "-" T ;)g";

Language lang(const char* src, std::string sep = "") {
  return Language::from_grammar(parse_grammar(src), RenderRules{std::move(sep), {}});
}

// (index, size) of every program with size < bound, by brute force over the
// independent tree generator. Every toy constructor emits at least one byte,
// so trees with `bound` constructors are long enough to stop at.
std::map<std::size_t, std::set<std::pair<std::size_t, std::size_t>>> census(
    const char* src, const std::string& sep, std::size_t bound, std::size_t width) {
  const auto g = std::make_shared<const RegularTreeGrammar>(compile_to_rtg(parse_grammar(src)));
  oracle::TreeGenerator gen(*g);
  const auto trees = gen.up_to(bound);
  std::map<std::size_t, std::set<std::pair<std::size_t, std::size_t>>> out;
  for (std::size_t i = 0; i < trees.size(); ++i) {
    const std::size_t size = render(trees[i], RenderRules{sep, {}}).size();
    if (size < bound) out[size / width].insert({i, size});
  }
  return out;
}

TEST(EstimateIndex, ParenFirstIndexOfSizeFive) {
  const Language l = lang(kParen);
  const EnumIndex r = estimate_index(l, 5, SampleParams{});
  EXPECT_GE(l.program(r).size(), 5u);
  EXPECT_LE(r, 12);
  EXPECT_GE(r, 2);  // brute-force first index of size >= 5
}

TEST(EstimateIndex, ZeroIsIndexZero) {
  EXPECT_EQ(estimate_index(lang(kParen), 0, SampleParams{}), 0);
  EXPECT_EQ(estimate_index(lang(kBinary, " "), 0, SampleParams{}), 0);
}

TEST(EstimateIndex, ExactHitReturnsLandingIndex) {
  // Ten unit strides land on index 10, whose program has 21 bytes.
  const Language l = lang(kParen);
  ASSERT_EQ(l.program(10).size(), 21u);
  EXPECT_EQ(estimate_index(l, 21, SampleParams{}), 10);
}

TEST(EstimateIndex, FiniteLanguageBeyondLongestProgram) {
  const Language l = lang(R"g(S : "a" | "bb" | "ccc" ;)g");
  EXPECT_THROW(estimate_index(l, 4, SampleParams{}), SearchLimitExceeded);
  const EnumIndex r = estimate_index(l, 3, SampleParams{});
  EXPECT_EQ(l.program(r), "ccc");
}

TEST(EstimateIndex, CeilingStopsUnboundedSearch) {
  // Every program has one byte, so size 2 is never reached.
  const Language flat = lang(R"g(S : "a" E ; E : | E E ;)g");
  SampleParams p;
  p.search_ceiling = 1000000;
  EXPECT_THROW(estimate_index(flat, 2, p), SearchLimitExceeded);
}

// The estimate's program reaches the target size, and the estimate is not
// before the true first index.
TEST(EstimateIndex, SoundnessOnRandomTargets) {
  std::mt19937 rng(17);
  for (const auto& [src, sep] : std::vector<std::pair<const char*, std::string>>{
           {kParen, ""}, {kBinary, " "}, {kChain, ""}, {kExpr, " "}}) {
    const Language l = lang(src, sep);
    for (int t = 0; t < 50; ++t) {
      const std::uint64_t x = std::uniform_int_distribution<std::uint64_t>(0, 120)(rng);
      const EnumIndex r = estimate_index(l, x, SampleParams{});
      ASSERT_GE(l.program(r).size(), x) << src << " x=" << x;
      // Paren index i has 2i+1 bytes, so the true first index is known.
      if (src == kParen) {
        EXPECT_GE(r, x / 2) << " x=" << x;
      }
    }
  }
}

TEST(SampleProgramInterval, GenerousBoundsGiveExactlyN) {
  const Language l = lang(kExpr, " ");
  SampleParams p;
  p.n = 40;
  p.a = 9;
  p.b = 21;
  p.seed = 3;
  const SampleSet s = sample_program_interval(l, p, {0, l.enumeration().total_below(14)});
  ASSERT_EQ(s.samples.size(), 40u);
  EXPECT_EQ(s.total_shortfall(), 0u);
  std::set<EnumIndex> idx;
  std::set<std::string> texts;
  for (const auto& x : s.samples) {
    EXPECT_GE(x.size, 9u);
    EXPECT_LT(x.size, 21u);
    EXPECT_EQ(x.size, x.text.size());
    EXPECT_EQ(x.text, l.program(x.index));
    idx.insert(x.index);
    texts.insert(x.text);
  }
  EXPECT_EQ(idx.size(), 40u);
  EXPECT_EQ(texts.size(), 40u);
}

TEST(SampleProgramInterval, EvenSizesAreAbsentFromParen) {
  const Language l = lang(kParen);
  SampleParams p;
  p.n = 3;
  p.a = 4;
  p.b = 5;
  const SampleSet s = sample_program_interval(
      l, p, {estimate_index(l, 4, p), estimate_index(l, 5, p)});
  EXPECT_TRUE(s.samples.empty());
  EXPECT_EQ(s.shortfall, std::vector<std::size_t>{3});
}

TEST(SampleProgramInterval, SingleProgramInterval) {
  const Language l = lang(kParen);
  SampleParams p;
  p.n = 1;
  p.a = 5;
  p.b = 6;
  const SampleSet s = sample_program_interval(
      l, p, {estimate_index(l, 5, p), estimate_index(l, 6, p)});
  ASSERT_EQ(s.samples.size(), 1u);
  EXPECT_EQ(s.samples[0].text, "((a))");
  EXPECT_EQ(s.samples[0].index, 2);
}

TEST(SampleProgramInterval, EmptyBoundsStillProbeStart) {
  const Language l = lang(kParen);
  SampleParams p;
  p.n = 1;
  p.a = 7;
  p.b = 8;
  const SampleSet s = sample_program_interval(l, p, {3, 3});
  ASSERT_EQ(s.samples.size(), 1u);
  EXPECT_EQ(s.samples[0].index, 3);
}

TEST(SampleProgramInterval, RejectsInvalidParams) {
  const Language l = lang(kParen);
  auto with = [](auto f) {
    SampleParams p;
    f(p);
    return p;
  };
  EXPECT_THROW(sample_program_interval(l, with([](SampleParams& p) { p.a = 1; p.b = 1; }), {0, 1}),
               ConfigError);
  EXPECT_THROW(sample_program_interval(l, with([](SampleParams& p) { p.n = 0; }), {0, 1}),
               ConfigError);
  EXPECT_THROW(sample_program_interval(l, with([](SampleParams& p) { p.alpha = 0; }), {0, 1}),
               ConfigError);
  EXPECT_THROW(sample_program_interval(l, with([](SampleParams& p) { p.beta = 1; }), {0, 1}),
               ConfigError);
  EXPECT_THROW(sample_program_interval(l, with([](SampleParams& p) { p.max_tries = 0; }), {0, 1}),
               ConfigError);
}

TEST(BucketedSample, SixteenBucketsOfSixteenBytes) {
  const Language l = lang(kExpr, " ");
  SampleParams p;
  p.seed = 9;
  p.max_tries = 6;
  const SampleSet s = bucketed_sample(l, 0, 256, 16, 4, p);
  ASSERT_EQ(s.shortfall.size(), 16u);
  std::map<std::size_t, std::size_t> per_bucket;
  for (const auto& x : s.samples) {
    EXPECT_GE(x.size, 16 * x.bucket);
    EXPECT_LT(x.size, 16 * x.bucket + 16);
    ++per_bucket[x.bucket];
  }
  for (std::size_t j = 0; j < 16; ++j) EXPECT_EQ(per_bucket[j] + s.shortfall[j], 4u) << j;
  EXPECT_GT(per_bucket[15], 0u);
}

TEST(BucketedSample, OneBucketMatchesSingleCall) {
  const Language l = lang(kExpr, " ");
  SampleParams p;
  p.seed = 21;
  p.max_tries = 6;
  const SampleSet whole = bucketed_sample(l, 8, 40, 1, 25, p);
  SampleParams q = p;
  q.n = 25;
  q.a = 8;
  q.b = 40;
  q.seed = derive_seed(p.seed, 0);
  const SampleSet single =
      sample_program_interval(l, q, {estimate_index(l, 8, q), estimate_index(l, 40, q)});
  EXPECT_EQ(whole.samples, single.samples);
  EXPECT_EQ(whole.shortfall, single.shortfall);
}

TEST(BucketedSample, RecoversCensusWhenTargetExceedsPopulation) {
  struct Case {
    const char* src;
    std::string sep;
  };
  for (const Case& c : {Case{kParen, ""}, Case{kBinary, ""}, Case{kChain, ""}}) {
    const auto expected = census(c.src, c.sep, 16, 4);
    std::size_t largest = 0;
    for (const auto& [b, s] : expected) largest = std::max(largest, s.size());
    const Language l = lang(c.src, c.sep);
    const SampleSet s = bucketed_sample(l, 0, 16, 4, largest + 1, SampleParams{});
    std::map<std::size_t, std::set<std::pair<std::size_t, std::size_t>>> got;
    for (const auto& x : s.samples) {
      EXPECT_EQ(x.size / 4, x.bucket);
      EXPECT_TRUE(got[x.bucket].insert({static_cast<std::size_t>(x.index), x.size}).second)
          << "duplicate index " << x.index;
    }
    EXPECT_EQ(got, expected) << c.src;
    for (std::size_t j = 0; j < 4; ++j)
      EXPECT_EQ(s.shortfall[j], largest + 1 - expected.at(j).size());
  }
}

TEST(BucketedSample, FiniteLanguageUpperBoundary) {
  const Language l = lang(R"g(S : "a" | "bb" | "ccc" | "dddd" "dddd" ;)g");
  const SampleSet s = bucketed_sample(l, 0, 8, 2, 5, SampleParams{});
  std::set<std::string> texts;
  for (const auto& x : s.samples) texts.insert(x.text);
  EXPECT_EQ(texts, (std::set<std::string>{"a", "bb", "ccc"}));
}

TEST(BucketedSample, RejectsBadPartition) {
  const Language l = lang(kParen);
  EXPECT_THROW(bucketed_sample(l, 0, 10, 3, 1, SampleParams{}), ConfigError);
  EXPECT_THROW(bucketed_sample(l, 0, 10, 0, 1, SampleParams{}), ConfigError);
  EXPECT_THROW(bucketed_sample(l, 5, 5, 1, 1, SampleParams{}), ConfigError);
  EXPECT_TRUE(bucketed_sample(l, 0, 16, 4, 0, SampleParams{}).samples.empty());
}

TEST(SamplerProperties, SeedDeterminismAndWorkerIndependence) {
  const Language l = lang(kExpr, " ");
  SampleParams p;
  p.seed = 77;
  p.max_tries = 5;
  const SampleSet a = bucketed_sample(l, 0, 64, 8, 10, p, 1);
  const SampleSet b = bucketed_sample(l, 0, 64, 8, 10, p, 1);
  const SampleSet c = bucketed_sample(l, 0, 64, 8, 10, p, 4);
  EXPECT_EQ(a.samples, b.samples);
  EXPECT_EQ(a.samples, c.samples);
  EXPECT_EQ(a.shortfall, c.shortfall);
  p.seed = 78;
  const SampleSet d = bucketed_sample(l, 0, 64, 8, 10, p, 1);
  EXPECT_NE(a.samples, d.samples);
}

TEST(SamplerProperties, ContainmentAndDistinctness) {
  std::mt19937 rng(5);
  const Language l = lang(kExpr, " ");
  for (int trial = 0; trial < 10; ++trial) {
    SampleParams p;
    p.seed = rng();
    p.max_tries = 4;
    const std::uint64_t width = std::uniform_int_distribution<std::uint64_t>(2, 12)(rng);
    const std::size_t buckets = std::uniform_int_distribution<std::size_t>(1, 5)(rng);
    const std::uint64_t a = std::uniform_int_distribution<std::uint64_t>(0, 20)(rng);
    const SampleSet s = bucketed_sample(l, a, a + width * buckets, buckets, 6, p);
    std::set<EnumIndex> idx;
    std::set<std::string> texts;
    for (const auto& x : s.samples) {
      EXPECT_GE(x.size, a + width * x.bucket);
      EXPECT_LT(x.size, a + width * (x.bucket + 1));
      idx.insert(x.index);
      texts.insert(x.text);
    }
    EXPECT_EQ(idx.size(), s.samples.size());
    EXPECT_EQ(texts.size(), s.samples.size());  // the grammar is unambiguous
  }
}

TEST(Rng, ChooseIsSortedDistinctAndSeeded) {
  Rng a(1), b(1);
  for (int t = 0; t < 100; ++t) {
    const auto x = a.choose(50, 7);
    EXPECT_EQ(x, b.choose(50, 7));
    ASSERT_EQ(x.size(), 7u);
    EXPECT_TRUE(std::is_sorted(x.begin(), x.end()));
    EXPECT_EQ(std::set<std::size_t>(x.begin(), x.end()).size(), 7u);
    EXPECT_LT(x.back(), 50u);
  }
  EXPECT_EQ(Rng(3).choose(5, 5), (std::vector<std::size_t>{0, 1, 2, 3, 4}));
  EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
  EXPECT_NE(derive_seed(1, 0), derive_seed(2, 0));
}

}  // namespace
}  // namespace cq
