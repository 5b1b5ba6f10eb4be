// Copyright 2026 The cqtool Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cq/grammar.hpp"

namespace cq {

using NonterminalId = std::size_t;

struct Slot {
  enum class Kind { FixedTerminal, Child };

  Kind kind;
  std::string literal;         // FixedTerminal
  NonterminalId child = 0;     // Child

  bool is_child() const { return kind == Kind::Child; }
};

// One constructor per source production, named C_<lhs>_<ordinal>.
struct ConstructorRule {
  std::string name;
  NonterminalId lhs = 0;
  std::size_t ordinal = 0;
  std::vector<Slot> slots;
  // Nonterminals of the Child slots, in slot order.
  std::vector<NonterminalId> children;

  std::size_t arity() const { return children.size(); }
};

struct RankedSymbol {
  std::string name;
  std::size_t arity;
};

class RegularTreeGrammar {
 public:
  RegularTreeGrammar(std::vector<std::string> nonterminals, std::vector<std::string> terminals,
                     std::vector<ConstructorRule> rules, NonterminalId start);

  const std::vector<std::string>& nonterminals() const { return nonterminals_; }
  const std::vector<std::string>& terminals() const { return terminals_; }
  const std::vector<ConstructorRule>& rules() const { return rules_; }
  const ConstructorRule& rule(std::size_t i) const { return rules_[i]; }
  // Rule indices for one lhs, in ordinal order.
  const std::vector<std::size_t>& rules_of(NonterminalId nt) const { return by_lhs_[nt]; }
  NonterminalId start() const { return start_; }
  NonterminalId id_of(std::string_view name) const;

  // Terminals at arity 0 followed by every constructor.
  std::vector<RankedSymbol> alphabet() const;

 private:
  std::vector<std::string> nonterminals_;
  std::vector<std::string> terminals_;
  std::vector<ConstructorRule> rules_;
  std::vector<std::vector<std::size_t>> by_lhs_;
  NonterminalId start_;
};

// Desugars if needed, then maps every production to its constructor rule.
// Throws ValidationError when the start symbol derives no finite word.
RegularTreeGrammar compile_to_rtg(const Grammar& g);

// A tree of constructor applications. `rule` points into the grammar the
// tree was built from, which must outlive the tree.
struct DerivationTree {
  const ConstructorRule* rule = nullptr;
  std::vector<DerivationTree> children;

  std::size_t constructor_count() const;
  // True when every child's lhs matches its Child slot, recursively.
  bool well_formed() const;
};

bool operator==(const DerivationTree& a, const DerivationTree& b);

// Adjacent-token matcher: a fixed literal or one of the classes
// `:ident`, `:number`, `:punct`, `:any`.
struct TokenPattern {
  enum class Kind { Literal, Ident, Number, Punct, Any };

  Kind kind = Kind::Any;
  std::string literal;

  static TokenPattern parse(std::string_view spec);
  bool matches(std::string_view token) const;
};

struct RenderRules {
  std::string separator = " ";
  // No separator is emitted between tokens l, r when some pair matches.
  std::vector<std::pair<TokenPattern, TokenPattern>> no_space_pairs;
};

// In-order concatenation of the tree's terminals. Empty literals produce no
// token and no separator.
std::string render(const DerivationTree& tree, const RenderRules& rules);

// Bytes of a rendered program. The trailing newline added when a program is
// written to disk is not part of the rendered text.
inline std::size_t size_of(std::string_view program) { return program.size(); }

}  // namespace cq
