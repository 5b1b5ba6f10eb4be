// Copyright 2026 The cqtool Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "cq/grammar.hpp"
#include "cq/minilang.hpp"
#include "cq/sampler.hpp"

namespace cq::minilang {
namespace {

TEST(Minilang, AcceptsWellTypedPrograms) {
  for (const char* p : {"return 0 ;", "return ( 0 + true ) ;", "int x = 1 ; return x ;",
                        "bool x = ( 1 < 2 ) ; int y = x ; return ( y * x ) ;",
                        "int x = 0 ; x = ( x + 1 ) ; return x ;", "return - ! 3 ;",
                        "return 1 + 2 * 3 ;", "bool b = true ; return ( b & b ) + 0 ;"}) {
    const CheckResult r = check(p);
    EXPECT_TRUE(r.ok) << p << ": " << r.message;
  }
}

TEST(Minilang, ReturnMustBeInt) {
  const CheckResult r = check("return ( 0 < 1 ) ;");
  EXPECT_FALSE(r.ok);
  EXPECT_EQ(r.line, 1u);
  EXPECT_EQ(r.column, 8u);
  EXPECT_NE(r.message.find("bool"), std::string::npos);
  EXPECT_FALSE(check("return true ;").ok);
  EXPECT_FALSE(check("bool x = 0 ; return x ;").ok);
  EXPECT_FALSE(check("return 1 & 1 ;").ok);
  EXPECT_FALSE(check("return ! 1 ;").ok);
}

TEST(Minilang, DeclarationsConvert) {
  EXPECT_TRUE(check("int x = true ; return x ;").ok);
  EXPECT_TRUE(check("bool x = 5 ; x = 7 ; return 0 ;").ok);
}

TEST(Minilang, ScopeErrors) {
  CheckResult r = check("return x ;");
  EXPECT_FALSE(r.ok);
  EXPECT_NE(r.message.find("undeclared 'x'"), std::string::npos);

  r = check("int x = 0 ; bool x = 1 ; return 0 ;");
  EXPECT_FALSE(r.ok);
  EXPECT_EQ(r.column, 18u);
  EXPECT_NE(r.message.find("redeclaration"), std::string::npos);

  EXPECT_FALSE(check("int x = x ; return 0 ;").ok);
  EXPECT_FALSE(check("y = 1 ; return 0 ;").ok);
}

TEST(Minilang, SyntaxErrors) {
  EXPECT_FALSE(check("").ok);
  EXPECT_FALSE(check("return 0").ok);
  EXPECT_FALSE(check("return 0 ; return 1 ;").ok);
  EXPECT_FALSE(check("return ( 0 ;").ok);
  EXPECT_FALSE(check("int = 0 ; return 0 ;").ok);
  const CheckResult r = check("return 0 ;\nreturn $ ;");
  EXPECT_FALSE(r.ok);
  EXPECT_EQ(r.line, 2u);
}

TEST(Minilang, TrailingNewlineIsWhitespace) {
  EXPECT_TRUE(check("return 0 ;\n").ok);
}

// The shipped grammar only produces well-scoped programs, so every rejection
// is a return of a bool.
TEST(Minilang, ShippedGrammarIsWellScoped) {
  const Grammar g = load_grammar(CQ_ASSETS_DIR "/grammars/minilang.cqg");
  const Language lang = Language::from_grammar(g, RenderRules{" ", {}});
  for (int i = 0; i < 3000; i += 7) {
    const std::string p = lang.program(i);
    const CheckResult r = check(p);
    if (!r.ok) EXPECT_NE(r.message.find("return value has type bool"), std::string::npos) << p;
  }
}

// The padding makes the constructor count equal the rendered size plus one.
TEST(Minilang, ShippedGrammarOrdersBySize) {
  const Grammar g = load_grammar(CQ_ASSETS_DIR "/grammars/minilang.cqg");
  const Language lang = Language::from_grammar(g, RenderRules{" ", {}});
  for (int i = 0; i < 5000; i += 3) {
    const std::string p = lang.program(i);
    EXPECT_EQ(lang.enumeration().stratum_of(i), p.size() + 1) << p;
  }
}

}  // namespace
}  // namespace cq::minilang
