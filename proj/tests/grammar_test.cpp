// Copyright 2026 The cqtool Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <random>

#include "cq/error.hpp"
#include "cq/grammar.hpp"

namespace cq {
namespace {

std::vector<std::string> rhs_strings(const Grammar& g, std::string_view lhs) {
  std::vector<std::string> out;
  for (const Production* p : g.productions_of(lhs)) {
    std::string s;
    for (const Symbol& sym : p->symbols()) {
      if (!s.empty()) s += ' ';
      s += sym.is_terminal() ? "\"" + sym.text + "\"" : sym.text;
    }
    out.push_back(s);
  }
  return out;
}

TEST(ParseGrammar, BalancedParens) {
  const Grammar g = parse_grammar(R"g(S: "a" | "(" S ")" ;)g");
  EXPECT_EQ(g.nonterminals, std::vector<std::string>{"S"});
  EXPECT_EQ(g.terminals, (std::vector<std::string>{"a", "(", ")"}));
  ASSERT_EQ(g.productions.size(), 2u);
  EXPECT_EQ(g.start, "S");
  EXPECT_EQ(g.productions[0].ordinal, 0u);
  EXPECT_EQ(g.productions[1].ordinal, 1u);
  EXPECT_EQ(rhs_strings(g, "S"), (std::vector<std::string>{"\"a\"", "\"(\" S \")\""}));
}

TEST(ParseGrammar, EmptyAlternativeIsEpsilon) {
  const Grammar g = parse_grammar("S: ;");
  ASSERT_EQ(g.productions.size(), 1u);
  EXPECT_TRUE(g.productions[0].rhs.empty());
  EXPECT_TRUE(g.terminals.empty());
}

TEST(ParseGrammar, MissingTerminatorReportsEndOfInput) {
  try {
    parse_grammar("S: \"a\"");
    FAIL() << "expected a syntax error";
  } catch (const GrammarError& e) {
    EXPECT_EQ(e.line(), 1u);
    EXPECT_EQ(e.column(), 7u);
    EXPECT_NE(std::string(e.what()).find("end of input"), std::string::npos) << e.what();
  }
}

TEST(ParseGrammar, ErrorPositions) {
  try {
    parse_grammar("S : T ;\n\nT : \"b\" | U ;\n");
    FAIL();
  } catch (const GrammarError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_EQ(e.column(), 11u);
    EXPECT_NE(std::string(e.what()).find("undefined symbol 'U'"), std::string::npos);
  }
  try {
    parse_grammar("S : \"a\" ;\n  S : \"b\" ;");
    FAIL();
  } catch (const GrammarError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 3u);
    EXPECT_NE(std::string(e.what()).find("duplicate definition"), std::string::npos);
  }
  EXPECT_THROW(parse_grammar("S : \"a ;"), GrammarError);
  EXPECT_THROW(parse_grammar("S : \"\\q\" ;"), GrammarError);
  EXPECT_THROW(parse_grammar("S : @ ;"), GrammarError);
  EXPECT_THROW(parse_grammar(""), GrammarError);
  EXPECT_THROW(parse_grammar("start T ; S : \"a\" ;"), GrammarError);
}

TEST(ParseGrammar, CommentsEscapesAndStartDirective) {
  const Grammar g = parse_grammar(
      "# leading comment\n"
      "A : \"q\\\"\" B ;   # trailing\n"
      "start B ;\n"
      "B : \"\\\\\" | \"\\n\\t\" ;\n");
  EXPECT_EQ(g.start, "B");
  EXPECT_EQ(g.terminals, (std::vector<std::string>{"q\"", "\\", "\n\t"}));
}

TEST(ParseGrammar, StartIsAlsoAnOrdinaryName) {
  const Grammar g = parse_grammar("start : \"s\" start | ;");
  EXPECT_EQ(g.start, "start");
  EXPECT_EQ(g.productions.size(), 2u);
}

TEST(Desugar, KleeneStar) {
  const Grammar g = desugar(parse_grammar(R"g(S: "a"* ;)g"));
  EXPECT_FALSE(g.has_sugar());
  EXPECT_EQ(g.nonterminals, (std::vector<std::string>{"S", "S__s0"}));
  EXPECT_EQ(rhs_strings(g, "S"), std::vector<std::string>{"S__s0"});
  EXPECT_EQ(rhs_strings(g, "S__s0"), (std::vector<std::string>{"", "\"a\" S__s0"}));
}

TEST(Desugar, Optional) {
  const Grammar g = desugar(parse_grammar(R"g(S: "a"? ;)g"));
  EXPECT_EQ(rhs_strings(g, "S"), std::vector<std::string>{"S__s0"});
  EXPECT_EQ(rhs_strings(g, "S__s0"), (std::vector<std::string>{"", "\"a\""}));
}

TEST(Desugar, PlusAndGroups) {
  const Grammar g = desugar(parse_grammar(R"g(S: ( "a" | "b" T )+ T ; T : "t" ( "," "t" )* ;)g"));
  EXPECT_EQ(rhs_strings(g, "S"), std::vector<std::string>{"S__s0 T"});
  EXPECT_EQ(rhs_strings(g, "S__s0"), (std::vector<std::string>{
                                         "\"a\"", "\"b\" T", "\"a\" S__s0", "\"b\" T S__s0"}));
  EXPECT_EQ(rhs_strings(g, "T"), std::vector<std::string>{"\"t\" T__s0"});
  EXPECT_EQ(rhs_strings(g, "T__s0"), (std::vector<std::string>{"", "\",\" \"t\" T__s0"}));
  for (const Production& p : g.productions) {
    const auto siblings = g.productions_of(p.lhs);
    EXPECT_EQ(siblings[p.ordinal], &p);
  }
}

TEST(Desugar, FreshNamesAvoidExistingNonterminals) {
  const Grammar g = desugar(parse_grammar(R"g(S: "a"* S__s0 ; S__s0 : "z" ;)g"));
  EXPECT_EQ(rhs_strings(g, "S"), std::vector<std::string>{"S__s1 S__s0"});
  EXPECT_EQ(rhs_strings(g, "S__s0"), std::vector<std::string>{"\"z\""});
}

TEST(Desugar, NestedGroupsNumberedPreOrder) {
  const Grammar g = desugar(parse_grammar(R"g(S: ( "a" "b"? )* ;)g"));
  EXPECT_EQ(g.nonterminals, (std::vector<std::string>{"S", "S__s0", "S__s1"}));
  EXPECT_EQ(rhs_strings(g, "S__s0"), (std::vector<std::string>{"", "\"a\" S__s1 S__s0"}));
  EXPECT_EQ(rhs_strings(g, "S__s1"), (std::vector<std::string>{"", "\"b\""}));
}

TEST(Desugar, PlainGrammarUnchanged) {
  const Grammar g = parse_grammar(R"g(S: "a" | "(" S ")" ;)g");
  EXPECT_EQ(desugar(g), g);
}

TEST(Validate, UnproductiveStart) {
  const ValidationReport r = validate(parse_grammar("S: S ;"));
  EXPECT_EQ(r.unproductive, std::vector<std::string>{"S"});
  EXPECT_TRUE(r.empty_language);
}

TEST(Validate, Unreachable) {
  const ValidationReport r = validate(parse_grammar(R"g(S: "a" ; T: "b" ;)g"));
  EXPECT_EQ(r.unreachable, std::vector<std::string>{"T"});
  EXPECT_TRUE(r.unproductive.empty());
  EXPECT_FALSE(r.empty_language);
}

TEST(Validate, BalancedParensClean) {
  const ValidationReport r = validate(parse_grammar(R"g(S: "a" | "(" S ")" ;)g"));
  EXPECT_TRUE(r.clean());
  EXPECT_FALSE(r.empty_language);
}

TEST(Validate, UnproductiveInnerNonterminal) {
  const ValidationReport r = validate(parse_grammar(R"g(S: "a" | L ; L : "(" L ;)g"));
  EXPECT_EQ(r.unproductive, std::vector<std::string>{"L"});
  EXPECT_FALSE(r.empty_language);
}

// Random EBNF grammars for the round-trip and idempotence properties.
class GrammarGen {
 public:
  explicit GrammarGen(unsigned seed) : rng_(seed) {}

  std::string text() {
    const int rules = pick(1, 4);
    std::string s;
    if (pick(0, 3) == 0) s += "start R" + std::to_string(pick(0, rules - 1)) + " ;\n";
    for (int r = 0; r < rules; ++r) {
      s += "R" + std::to_string(r) + " :";
      const int alts = pick(1, 3);
      for (int a = 0; a < alts; ++a) {
        if (a) s += " |";
        s += sequence(rules, 2);
      }
      s += " ;\n";
    }
    return s;
  }

 private:
  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  std::string sequence(int rules, int depth) {
    std::string s;
    const int n = pick(0, 3);
    for (int i = 0; i < n; ++i) {
      s += ' ';
      const int kind = pick(0, depth > 0 ? 4 : 2);
      if (kind == 0) {
        static const char* lits[] = {"a", "(", ")", "\\\"", "\\\\", "\\n", ""};
        s += std::string("\"") + lits[pick(0, 6)] + "\"";
      } else if (kind <= 2) {
        s += "R" + std::to_string(pick(0, rules - 1));
      } else {
        s += "(";
        const int alts = pick(1, 2);
        for (int a = 0; a < alts; ++a) {
          if (a) s += " |";
          s += sequence(rules, depth - 1);
        }
        s += " )";
      }
      static const char* post[] = {"", "", "?", "*", "+"};
      s += post[pick(0, 4)];
    }
    return s;
  }

  std::mt19937 rng_;
};

TEST(GrammarProperties, PrintParseRoundTrip) {
  GrammarGen gen(7);
  for (int i = 0; i < 300; ++i) {
    const std::string src = gen.text();
    const Grammar g = parse_grammar(src);
    const std::string printed = print_grammar(g);
    EXPECT_EQ(parse_grammar(printed), g) << src << "\n---\n" << printed;
    const Grammar d = desugar(g);
    EXPECT_EQ(parse_grammar(print_grammar(d)), d) << src;
  }
}

TEST(GrammarProperties, DesugarIdempotent) {
  GrammarGen gen(11);
  for (int i = 0; i < 300; ++i) {
    const Grammar once = desugar(parse_grammar(gen.text()));
    EXPECT_FALSE(once.has_sugar());
    EXPECT_EQ(desugar(once), once);
  }
}

}  // namespace
}  // namespace cq
