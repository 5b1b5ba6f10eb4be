// Copyright 2026 The cqtool Authors
// SPDX-License-Identifier: Apache-2.0

#include "cq/grammar.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <fmt/format.h>

#include "cq/error.hpp"

namespace cq {

GrammarError::GrammarError(const std::string& message, std::size_t line, std::size_t column)
    : Error(column == 0 ? fmt::format("line {}: {}", line, message)
                        : fmt::format("line {}, column {}: {}", line, column, message)),
      bare_(message),
      line_(line),
      column_(column) {}

bool operator==(const Group& a, const Group& b) {
  return a.quantifier == b.quantifier && a.alternatives == b.alternatives;
}

bool Production::is_plain() const {
  return std::all_of(rhs.begin(), rhs.end(), [](const Item& it) { return it.is_symbol(); });
}

std::vector<Symbol> Production::symbols() const {
  std::vector<Symbol> out;
  out.reserve(rhs.size());
  for (const Item& it : rhs) out.push_back(it.symbol());
  return out;
}

bool Grammar::has_nonterminal(std::string_view name) const {
  return std::find(nonterminals.begin(), nonterminals.end(), name) != nonterminals.end();
}

bool Grammar::has_terminal(std::string_view literal) const {
  return std::find(terminals.begin(), terminals.end(), literal) != terminals.end();
}

bool Grammar::has_sugar() const {
  return !std::all_of(productions.begin(), productions.end(),
                      [](const Production& p) { return p.is_plain(); });
}

std::vector<const Production*> Grammar::productions_of(std::string_view lhs) const {
  std::vector<const Production*> out;
  for (const Production& p : productions)
    if (p.lhs == lhs) out.push_back(&p);
  return out;
}

Grammar load_grammar(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot read grammar file '{}'", path));
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_grammar(buf.str());
}

std::string escape_literal(std::string_view literal) {
  std::string out;
  out.reserve(literal.size());
  for (char c : literal) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out;
}

namespace {

void print_items(std::string& out, const std::vector<Item>& items);

void print_item(std::string& out, const Item& item) {
  if (item.is_symbol()) {
    const Symbol& s = item.symbol();
    if (s.is_terminal())
      out += '"' + escape_literal(s.text) + '"';
    else
      out += s.text;
    return;
  }
  const Group& g = item.group();
  out += "(";
  for (std::size_t i = 0; i < g.alternatives.size(); ++i) {
    if (i) out += " |";
    if (!g.alternatives[i].empty()) out += ' ';
    print_items(out, g.alternatives[i]);
  }
  out += " )";
  switch (g.quantifier) {
    case Quantifier::None: break;
    case Quantifier::Optional: out += '?'; break;
    case Quantifier::Star: out += '*'; break;
    case Quantifier::Plus: out += '+'; break;
  }
}

void print_items(std::string& out, const std::vector<Item>& items) {
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ' ';
    print_item(out, items[i]);
  }
}

}  // namespace

std::string print_grammar(const Grammar& g) {
  std::string out;
  if (!g.nonterminals.empty() && g.nonterminals.front() != g.start)
    out += "start " + g.start + " ;\n";
  for (const std::string& nt : g.nonterminals) {
    out += nt + " :";
    const auto prods = g.productions_of(nt);
    for (std::size_t i = 0; i < prods.size(); ++i) {
      if (i) out += " |";
      if (!prods[i]->rhs.empty()) out += ' ';
      print_items(out, prods[i]->rhs);
    }
    out += " ;\n";
  }
  return out;
}

ValidationReport validate(const Grammar& input) {
  const Grammar g = input.has_sugar() ? desugar(input) : input;

  std::unordered_set<std::string> productive;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const Production& p : g.productions) {
      if (productive.count(p.lhs)) continue;
      const bool all = std::all_of(p.rhs.begin(), p.rhs.end(), [&](const Item& it) {
        return it.symbol().is_terminal() || productive.count(it.symbol().text);
      });
      if (all) {
        productive.insert(p.lhs);
        changed = true;
      }
    }
  }

  std::unordered_set<std::string> reachable{g.start};
  std::vector<std::string> work{g.start};
  while (!work.empty()) {
    const std::string nt = work.back();
    work.pop_back();
    for (const Production* p : g.productions_of(nt))
      for (const Item& it : p->rhs)
        if (it.symbol().is_nonterminal() && reachable.insert(it.symbol().text).second)
          work.push_back(it.symbol().text);
  }

  ValidationReport report;
  for (const std::string& nt : g.nonterminals) {
    if (!productive.count(nt)) report.unproductive.push_back(nt);
    if (!reachable.count(nt)) report.unreachable.push_back(nt);
  }
  report.empty_language = !productive.count(g.start);
  return report;
}

}  // namespace cq
