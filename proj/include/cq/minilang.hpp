// Copyright 2026 The cqtool Authors
// SPDX-License-Identifier: Apache-2.0

// A small typed language used as a stand-in compiler in tests and demos.
//
//   program := stmt* "return" expr ";"
//   stmt    := type ident "=" expr ";"      declaration
//            | ident "=" expr ";"           assignment
//   type    := "int" | "bool"
//   expr    := cmp { "&" cmp }
//   cmp     := sum [ "<" sum ]
//   sum     := unary { ("+" | "-" | "*") unary }
//   unary   := ("!" | "-") unary | atom
//   atom    := digits | "true" | "false" | ident | "(" expr ")"
//
// Operands convert freely between int and bool, so an expression's type is
// that of its outermost operator or atom: arithmetic is int, "<", "&" and "!"
// are bool, a variable has its declared type. Declarations and assignments
// convert the value to the variable's type. The return statement is strict:
// its expression must have type int. Variables must be declared before use,
// may not be redeclared, and a declaration's own variable is not in scope in
// its initializer.

#pragma once

#include <string>
#include <string_view>

namespace cq::minilang {

struct CheckResult {
  bool ok = false;
  std::size_t line = 0;  // 1-based position of the first error
  std::size_t column = 0;
  std::string message;
};

CheckResult check(std::string_view source);

}  // namespace cq::minilang
