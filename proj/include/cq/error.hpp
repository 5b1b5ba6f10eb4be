// Copyright 2026 The cqtool Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cq {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed grammar text. line/column are 1-based; column 0 means "unknown".
class GrammarError : public Error {
 public:
  GrammarError(const std::string& message, std::size_t line, std::size_t column);

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& bare_message() const { return bare_; }

 private:
  std::string bare_;
  std::size_t line_;
  std::size_t column_;
};

// A grammar that is well-formed but unusable for enumeration.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Bad language config, missing compiler executable, invalid parameters.
class ConfigError : public Error {
 public:
  using Error::Error;
};

class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

// The index walk exceeded its ceiling without reaching the requested size.
class SearchLimitExceeded : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// A metric whose denominator is empty.
class UndefinedMetric : public Error {
 public:
  using Error::Error;
};

}  // namespace cq
