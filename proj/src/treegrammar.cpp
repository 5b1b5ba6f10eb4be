// Copyright 2026 The cqtool Authors
// SPDX-License-Identifier: Apache-2.0

#include "cq/treegrammar.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_map>

#include <fmt/format.h>

#include "cq/error.hpp"

namespace cq {

RegularTreeGrammar::RegularTreeGrammar(std::vector<std::string> nonterminals,
                                       std::vector<std::string> terminals,
                                       std::vector<ConstructorRule> rules, NonterminalId start)
    : nonterminals_(std::move(nonterminals)),
      terminals_(std::move(terminals)),
      rules_(std::move(rules)),
      by_lhs_(nonterminals_.size()),
      start_(start) {
  for (std::size_t i = 0; i < rules_.size(); ++i) by_lhs_[rules_[i].lhs].push_back(i);
}

NonterminalId RegularTreeGrammar::id_of(std::string_view name) const {
  const auto it = std::find(nonterminals_.begin(), nonterminals_.end(), name);
  if (it == nonterminals_.end()) throw ConfigError(fmt::format("unknown nonterminal '{}'", name));
  return static_cast<NonterminalId>(it - nonterminals_.begin());
}

std::vector<RankedSymbol> RegularTreeGrammar::alphabet() const {
  std::vector<RankedSymbol> out;
  for (const auto& t : terminals_) out.push_back({t, 0});
  for (const auto& r : rules_) out.push_back({r.name, r.arity()});
  return out;
}

RegularTreeGrammar compile_to_rtg(const Grammar& input) {
  const Grammar g = desugar(input);
  const ValidationReport report = validate(g);
  if (report.empty_language)
    throw ValidationError(fmt::format("start symbol '{}' is unproductive", g.start));

  std::unordered_map<std::string, NonterminalId> ids;
  for (std::size_t i = 0; i < g.nonterminals.size(); ++i) ids.emplace(g.nonterminals[i], i);

  std::vector<ConstructorRule> rules;
  rules.reserve(g.productions.size());
  for (const Production& p : g.productions) {
    ConstructorRule r;
    r.name = fmt::format("C_{}_{}", p.lhs, p.ordinal);
    r.lhs = ids.at(p.lhs);
    r.ordinal = p.ordinal;
    for (const Symbol& s : p.symbols()) {
      if (s.is_terminal()) {
        r.slots.push_back({Slot::Kind::FixedTerminal, s.text, 0});
      } else {
        const NonterminalId c = ids.at(s.text);
        r.slots.push_back({Slot::Kind::Child, {}, c});
        r.children.push_back(c);
      }
    }
    rules.push_back(std::move(r));
  }
  return RegularTreeGrammar(g.nonterminals, g.terminals, std::move(rules), ids.at(g.start));
}

std::size_t DerivationTree::constructor_count() const {
  std::size_t n = 1;
  for (const auto& c : children) n += c.constructor_count();
  return n;
}

bool DerivationTree::well_formed() const {
  if (!rule || rule->children.size() != children.size()) return false;
  for (std::size_t k = 0; k < children.size(); ++k) {
    if (!children[k].rule || children[k].rule->lhs != rule->children[k]) return false;
    if (!children[k].well_formed()) return false;
  }
  return true;
}

bool operator==(const DerivationTree& a, const DerivationTree& b) {
  return a.rule == b.rule && a.children == b.children;
}

TokenPattern TokenPattern::parse(std::string_view spec) {
  if (spec == ":ident") return {Kind::Ident, {}};
  if (spec == ":number") return {Kind::Number, {}};
  if (spec == ":punct") return {Kind::Punct, {}};
  if (spec == ":any") return {Kind::Any, {}};
  return {Kind::Literal, std::string(spec)};
}

namespace {

bool is_ident(std::string_view t) {
  if (t.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(t[0])) && t[0] != '_') return false;
  return std::all_of(t.begin(), t.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

bool is_number(std::string_view t) {
  return !t.empty() && std::isdigit(static_cast<unsigned char>(t[0])) &&
         std::all_of(t.begin(), t.end(),
                     [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '.'; });
}

}  // namespace

bool TokenPattern::matches(std::string_view token) const {
  switch (kind) {
    case Kind::Literal: return token == literal;
    case Kind::Ident: return is_ident(token);
    case Kind::Number: return is_number(token);
    case Kind::Punct: return !is_ident(token) && !is_number(token);
    case Kind::Any: return true;
  }
  return false;
}

namespace {

class Renderer {
 public:
  explicit Renderer(const RenderRules& rules) : rules_(rules) {}

  void emit(const DerivationTree& t) {
    std::size_t child = 0;
    for (const Slot& s : t.rule->slots) {
      if (s.is_child())
        emit(t.children[child++]);
      else
        token(s.literal);
    }
  }

  std::string take() { return std::move(out_); }

 private:
  void token(std::string_view tok) {
    if (tok.empty()) return;
    if (have_prev_ && !suppressed(prev_, tok)) out_ += rules_.separator;
    out_ += tok;
    prev_ = tok;
    have_prev_ = true;
  }

  bool suppressed(std::string_view l, std::string_view r) const {
    for (const auto& [pl, pr] : rules_.no_space_pairs)
      if (pl.matches(l) && pr.matches(r)) return true;
    return false;
  }

  const RenderRules& rules_;
  std::string out_;
  std::string_view prev_;
  bool have_prev_ = false;
};

}  // namespace

std::string render(const DerivationTree& tree, const RenderRules& rules) {
  Renderer r(rules);
  r.emit(tree);
  return r.take();
}

}  // namespace cq
