// Copyright 2026 The cqtool Authors
// SPDX-License-Identifier: Apache-2.0

#include <set>
#include <unordered_map>
#include <unordered_set>

#include <fmt/format.h>

#include "cq/grammar.hpp"

namespace cq {
namespace {

// Expansion of each sugar form into a fresh nonterminal A, where alt_j are
// the group's alternatives:
//   ( alts )   A : alt_1 | ... | alt_m
//   ( alts )?  A : (eps) | alt_1 | ... | alt_m
//   ( alts )*  A : (eps) | alt_1 A | ... | alt_m A
//   ( alts )+  A : alt_1 | ... | alt_m | alt_1 A | ... | alt_m A
class Desugarer {
 public:
  explicit Desugarer(const Grammar& g) : in_(g) {
    for (const std::string& nt : g.nonterminals) taken_.insert(nt);
  }

  Grammar run() {
    Grammar out;
    out.start = in_.start;
    out.nonterminals = in_.nonterminals;
    for (const Production& p : in_.productions) {
      Production q{p.lhs, flatten(p.lhs, p.rhs), p.ordinal};
      out.productions.push_back(std::move(q));
    }
    for (auto& [name, prods] : fresh_) {
      out.nonterminals.push_back(name);
      for (auto& p : prods) out.productions.push_back(std::move(p));
    }
    // First appearance in the flattened productions, as if parsed from print.
    std::set<std::string> seen;
    for (const Production& p : out.productions)
      for (const Symbol& s : p.symbols())
        if (s.is_terminal() && seen.insert(s.text).second) out.terminals.push_back(s.text);
    return out;
  }

 private:
  std::vector<Item> flatten(const std::string& root, const std::vector<Item>& items) {
    std::vector<Item> out;
    out.reserve(items.size());
    for (const Item& it : items) {
      if (it.is_symbol())
        out.push_back(it);
      else
        out.push_back(Symbol::nonterminal(expand(root, it.group())));
    }
    return out;
  }

  std::string fresh_name(const std::string& root) {
    std::size_t& k = counter_[root];
    std::string name;
    do {
      name = fmt::format("{}__s{}", root, k++);
    } while (taken_.count(name));
    taken_.insert(name);
    return name;
  }

  std::string expand(const std::string& root, const Group& g) {
    const std::string name = fresh_name(root);
    // Reserve the slot now so nested groups are emitted after their parent.
    const std::size_t slot = fresh_.size();
    fresh_.emplace_back(name, std::vector<Production>{});

    std::vector<std::vector<Item>> bodies;
    bodies.reserve(g.alternatives.size());
    for (const auto& alt : g.alternatives) bodies.push_back(flatten(root, alt));

    std::vector<std::vector<Item>> rhss;
    const Item self = Symbol::nonterminal(name);
    switch (g.quantifier) {
      case Quantifier::None:
        rhss = bodies;
        break;
      case Quantifier::Optional:
        rhss.emplace_back();
        for (const auto& b : bodies) rhss.push_back(b);
        break;
      case Quantifier::Star:
        rhss.emplace_back();
        for (auto b : bodies) {
          b.push_back(self);
          rhss.push_back(std::move(b));
        }
        break;
      case Quantifier::Plus:
        for (const auto& b : bodies) rhss.push_back(b);
        for (auto b : bodies) {
          b.push_back(self);
          rhss.push_back(std::move(b));
        }
        break;
    }

    auto& prods = fresh_[slot].second;
    std::size_t ordinal = 0;
    for (auto& rhs : rhss) prods.push_back(Production{name, std::move(rhs), ordinal++});
    return name;
  }

  const Grammar& in_;
  std::unordered_set<std::string> taken_;
  std::unordered_map<std::string, std::size_t> counter_;
  std::vector<std::pair<std::string, std::vector<Production>>> fresh_;
};

}  // namespace

Grammar desugar(const Grammar& g) {
  if (!g.has_sugar()) return g;
  return Desugarer(g).run();
}

}  // namespace cq
