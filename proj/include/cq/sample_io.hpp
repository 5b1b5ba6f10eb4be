// Copyright 2026 The cqtool Authors
// SPDX-License-Identifier: Apache-2.0

// On-disk sample directories.
//
//   <root>/<manifest>                  one JSON object per line:
//     {"index":"123","size":17,"bucket":1,"sha256":"...","path":"samples/1/123.ml"}
//   <root>/samples/<bucket>/<index>.<ext>   program text plus one newline
//
// Paths in the manifest are relative to <root>.

#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "cq/sampler.hpp"

namespace cq {

std::string sample_relative_path(const Sample& s, std::string_view extension);

// Serializes one manifest line (without the newline).
std::string manifest_line(const Sample& s, std::string_view extension);

// Writes program files and the manifest. Files that already exist with the
// same content are left alone. Throws IoError.
void write_sample_dir(const SampleSet& set, const std::filesystem::path& root,
                      std::string_view manifest_name, std::string_view extension);

// Reads a manifest and the program files it names; verifies each digest.
// Throws IoError on missing or corrupted files.
SampleSet read_sample_dir(const std::filesystem::path& root, std::string_view manifest_name);

// Writes the shortfall summary next to the manifest (`<manifest>.summary.json`).
void write_sample_summary(const SampleSet& set, const std::filesystem::path& root,
                          std::string_view manifest_name);

}  // namespace cq
