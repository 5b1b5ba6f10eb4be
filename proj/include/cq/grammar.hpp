// Copyright 2026 The cqtool Authors
// SPDX-License-Identifier: Apache-2.0

// Context-free grammars: the in-memory model, the `.cqg` text format, EBNF
// desugaring and productivity/reachability checks.
//
// The `.cqg` format:
//
//   # comment
//   start Expr ;                      (optional; default is the first rule)
//   Expr : Term | Expr "+" Term ;
//   Term : "x" | "(" Expr ")" ;
//   List : ( Item "," )* Item? ;      (EBNF groups and ? * + postfixes)
//   Empty : ;                         (an empty alternative is epsilon)

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace cq {

struct Symbol {
  enum class Kind { Terminal, Nonterminal };

  Kind kind;
  // Literal text for terminals, name for nonterminals.
  std::string text;

  static Symbol terminal(std::string literal) { return {Kind::Terminal, std::move(literal)}; }
  static Symbol nonterminal(std::string name) { return {Kind::Nonterminal, std::move(name)}; }

  bool is_terminal() const { return kind == Kind::Terminal; }
  bool is_nonterminal() const { return kind == Kind::Nonterminal; }

  friend bool operator==(const Symbol&, const Symbol&) = default;
};

enum class Quantifier { None, Optional, Star, Plus };

struct Item;

// Parenthesized alternatives with an optional postfix operator. A bare symbol
// with a postfix is represented as a one-alternative group.
struct Group {
  std::vector<std::vector<Item>> alternatives;
  Quantifier quantifier = Quantifier::None;

  friend bool operator==(const Group&, const Group&);
};

struct Item {
  std::variant<Symbol, Group> value;

  Item(Symbol s) : value(std::move(s)) {}  // NOLINT: implicit by intent
  Item(Group g) : value(std::move(g)) {}   // NOLINT

  bool is_symbol() const { return std::holds_alternative<Symbol>(value); }
  const Symbol& symbol() const { return std::get<Symbol>(value); }
  const Group& group() const { return std::get<Group>(value); }

  friend bool operator==(const Item&, const Item&) = default;
};

struct Production {
  std::string lhs;
  std::vector<Item> rhs;
  // Position among the productions that share this lhs, dense from 0.
  std::size_t ordinal = 0;

  bool is_plain() const;
  // The rhs as plain symbols. Precondition: is_plain().
  std::vector<Symbol> symbols() const;

  friend bool operator==(const Production&, const Production&) = default;
};

struct Grammar {
  // Definition order.
  std::vector<std::string> nonterminals;
  // Order of first appearance.
  std::vector<std::string> terminals;
  std::vector<Production> productions;
  std::string start;

  bool has_nonterminal(std::string_view name) const;
  bool has_terminal(std::string_view literal) const;
  bool has_sugar() const;
  std::vector<const Production*> productions_of(std::string_view lhs) const;

  friend bool operator==(const Grammar&, const Grammar&) = default;
};

struct ValidationReport {
  std::vector<std::string> unproductive;
  std::vector<std::string> unreachable;
  bool empty_language = false;

  bool clean() const { return unproductive.empty() && unreachable.empty(); }
};

// Parses `.cqg` text. Throws GrammarError carrying line and column.
Grammar parse_grammar(std::string_view text);

// Reads and parses a `.cqg` file. Throws IoError when unreadable.
Grammar load_grammar(const std::string& path);

// Prints in `.cqg` syntax; parse_grammar(print_grammar(g)) == g.
std::string print_grammar(const Grammar& g);

// Replaces every group/postfix occurrence by a fresh nonterminal named
// `<lhs>__s<k>` (k counts occurrences per source lhs, pre-order). A grammar
// without sugar is returned unchanged.
Grammar desugar(const Grammar& g);

// Productivity and reachability fixpoints. Sugared grammars are desugared
// first, so offenders may include generated names.
ValidationReport validate(const Grammar& g);

// Escapes a terminal literal for `.cqg` output, without the quotes.
std::string escape_literal(std::string_view literal);

}  // namespace cq
