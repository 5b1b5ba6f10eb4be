// Copyright 2026 The cqtool Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cq/error.hpp"
#include "cq/grammar.hpp"
#include "cq/hash.hpp"
#include "cq/sample_io.hpp"

namespace cq {
namespace {

namespace fs = std::filesystem;

class SampleDir : public ::testing::Test {
 protected:
  void SetUp() override {
    root_ = fs::temp_directory_path() /
            ("cq_sample_io_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(root_);
  }
  void TearDown() override { fs::remove_all(root_); }

  static SampleSet make() {
    const Language lang =
        Language::from_grammar(parse_grammar(R"g(S : "x" | S "+" S ;)g"), RenderRules{" ", {}});
    SampleParams p;
    p.seed = 3;
    return bucketed_sample(lang, 0, 16, 2, 5, p);
  }

  static std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream b;
    b << in.rdbuf();
    return b.str();
  }

  fs::path root_;
};

TEST(Sha256, KnownDigests) {
  EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(ManifestLine, Fields) {
  const Sample s{BigInt("123456789012345678901234567890"), "x + x", 5, 1};
  EXPECT_EQ(sample_relative_path(s, "ml"), "samples/1/123456789012345678901234567890.ml");
  EXPECT_EQ(manifest_line(s, "ml"),
            "{\"index\":\"123456789012345678901234567890\",\"size\":5,\"bucket\":1,\"sha256\":\"" +
                sha256_hex("x + x") + "\",\"path\":\"samples/1/123456789012345678901234567890.ml\"}");
}

TEST_F(SampleDir, RoundTrip) {
  const SampleSet set = make();
  ASSERT_FALSE(set.samples.empty());
  write_sample_dir(set, root_, "manifest.jsonl", "txt");
  write_sample_summary(set, root_, "manifest.jsonl");
  const SampleSet back = read_sample_dir(root_, "manifest.jsonl");
  EXPECT_EQ(back.samples, set.samples);
  EXPECT_EQ(back.shortfall, set.shortfall);
  EXPECT_EQ(back.params.n, set.params.n);
  EXPECT_EQ(back.params.seed, set.params.seed);
  const Sample& first = set.samples.front();
  EXPECT_EQ(slurp(root_ / sample_relative_path(first, "txt")), first.text + "\n");
}

TEST_F(SampleDir, ManifestBytesAreDeterministic) {
  write_sample_dir(make(), root_ / "a", "manifest.jsonl", "txt");
  write_sample_dir(make(), root_ / "b", "manifest.jsonl", "txt");
  EXPECT_EQ(slurp(root_ / "a" / "manifest.jsonl"), slurp(root_ / "b" / "manifest.jsonl"));
}

TEST_F(SampleDir, EmptySetWritesEmptyManifest) {
  write_sample_dir(SampleSet{}, root_, "manifest.jsonl", "txt");
  EXPECT_EQ(slurp(root_ / "manifest.jsonl"), "");
  EXPECT_TRUE(read_sample_dir(root_, "manifest.jsonl").samples.empty());
}

TEST_F(SampleDir, CorruptedProgramIsDetected) {
  const SampleSet set = make();
  write_sample_dir(set, root_, "manifest.jsonl", "txt");
  std::ofstream(root_ / sample_relative_path(set.samples.front(), "txt")) << "tampered\n";
  EXPECT_THROW(read_sample_dir(root_, "manifest.jsonl"), IoError);
}

TEST_F(SampleDir, MissingFilesAreIoErrors) {
  EXPECT_THROW(read_sample_dir(root_, "manifest.jsonl"), IoError);
  const SampleSet set = make();
  write_sample_dir(set, root_, "manifest.jsonl", "txt");
  fs::remove(root_ / sample_relative_path(set.samples.back(), "txt"));
  EXPECT_THROW(read_sample_dir(root_, "manifest.jsonl"), IoError);
}

TEST_F(SampleDir, MalformedManifestIsAnIoError) {
  fs::create_directories(root_);
  std::ofstream(root_ / "manifest.jsonl") << "{not json\n";
  EXPECT_THROW(read_sample_dir(root_, "manifest.jsonl"), IoError);
}

}  // namespace
}  // namespace cq
