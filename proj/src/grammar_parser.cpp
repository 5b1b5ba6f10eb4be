// Copyright 2026 The cqtool Authors
// SPDX-License-Identifier: Apache-2.0

#include <cctype>
#include <unordered_map>
#include <unordered_set>

#include <fmt/format.h>

#include "cq/error.hpp"
#include "cq/grammar.hpp"

namespace cq {
namespace {

enum class Tok { Ident, String, Colon, Pipe, Semi, LParen, RParen, Question, Star, Plus, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

const char* describe(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::String: return "string literal";
    case Tok::Colon: return "':'";
    case Tok::Pipe: return "'|'";
    case Tok::Semi: return "';'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Question: return "'?'";
    case Tok::Star: return "'*'";
    case Tok::Plus: return "'+'";
    case Tok::End: return "end of input";
  }
  return "?";
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    skip_space_and_comments();
    const std::size_t line = line_, column = column_;
    if (pos_ >= text_.size()) return {Tok::End, "", line, column};
    const char c = text_[pos_];
    auto single = [&](Tok k) {
      advance();
      return Token{k, std::string(1, c), line, column};
    };
    switch (c) {
      case ':': return single(Tok::Colon);
      case '|': return single(Tok::Pipe);
      case ';': return single(Tok::Semi);
      case '(': return single(Tok::LParen);
      case ')': return single(Tok::RParen);
      case '?': return single(Tok::Question);
      case '*': return single(Tok::Star);
      case '+': return single(Tok::Plus);
      case '"': return string_literal(line, column);
      default: break;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string name;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        name += text_[pos_];
        advance();
      }
      return {Tok::Ident, std::move(name), line, column};
    }
    throw GrammarError(fmt::format("unexpected character '{}'", c), line, column);
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_space_and_comments() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  Token string_literal(std::size_t line, std::size_t column) {
    advance();  // opening quote
    std::string value;
    for (;;) {
      if (pos_ >= text_.size() || text_[pos_] == '\n')
        throw GrammarError("unterminated string literal", line, column);
      const char c = text_[pos_];
      if (c == '"') {
        advance();
        return {Tok::String, std::move(value), line, column};
      }
      if (c == '\\') {
        const std::size_t esc_line = line_, esc_col = column_;
        advance();
        if (pos_ >= text_.size()) throw GrammarError("unterminated string literal", line, column);
        switch (text_[pos_]) {
          case '"': value += '"'; break;
          case '\\': value += '\\'; break;
          case 'n': value += '\n'; break;
          case 't': value += '\t'; break;
          default:
            throw GrammarError(fmt::format("unknown escape '\\{}'", text_[pos_]), esc_line,
                               esc_col);
        }
        advance();
        continue;
      }
      value += c;
      advance();
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : lexer_(text) {
    cur_ = lexer_.next();
    peek_ = lexer_.next();
  }

  Grammar parse() {
    std::optional<Token> start_directive;
    while (cur_.kind != Tok::End) {
      if (cur_.kind == Tok::Ident && cur_.text == "start" && peek_.kind == Tok::Ident) {
        shift();
        if (start_directive)
          throw GrammarError("duplicate start directive", cur_.line, cur_.column);
        start_directive = expect(Tok::Ident);
        expect(Tok::Semi);
        continue;
      }
      rule();
    }

    if (g_.nonterminals.empty()) throw GrammarError("grammar defines no rules", cur_.line, cur_.column);

    for (const Token& ref : references_)
      if (!defined_.count(ref.text))
        throw GrammarError(fmt::format("reference to undefined symbol '{}'", ref.text), ref.line,
                           ref.column);

    if (start_directive) {
      if (!defined_.count(start_directive->text))
        throw GrammarError(fmt::format("start symbol '{}' is not defined", start_directive->text),
                           start_directive->line, start_directive->column);
      g_.start = start_directive->text;
    } else {
      g_.start = g_.nonterminals.front();
    }
    return std::move(g_);
  }

 private:
  void shift() {
    cur_ = std::move(peek_);
    peek_ = lexer_.next();
  }

  Token expect(Tok kind) {
    if (cur_.kind != kind)
      throw GrammarError(fmt::format("expected {}, found {}", describe(kind), describe(cur_.kind)),
                         cur_.line, cur_.column);
    Token t = std::move(cur_);
    shift();
    return t;
  }

  void rule() {
    const Token lhs = expect(Tok::Ident);
    if (!defined_.insert(lhs.text).second)
      throw GrammarError(fmt::format("duplicate definition of nonterminal '{}'", lhs.text), lhs.line,
                         lhs.column);
    g_.nonterminals.push_back(lhs.text);
    expect(Tok::Colon);
    std::size_t ordinal = 0;
    for (auto& alt : alternatives()) {
      g_.productions.push_back(Production{lhs.text, std::move(alt), ordinal++});
    }
    expect(Tok::Semi);
  }

  std::vector<std::vector<Item>> alternatives() {
    std::vector<std::vector<Item>> alts;
    alts.push_back(sequence());
    while (cur_.kind == Tok::Pipe) {
      shift();
      alts.push_back(sequence());
    }
    return alts;
  }

  std::vector<Item> sequence() {
    std::vector<Item> items;
    while (cur_.kind == Tok::Ident || cur_.kind == Tok::String || cur_.kind == Tok::LParen)
      items.push_back(postfix());
    return items;
  }

  Item postfix() {
    Item item = atom();
    while (cur_.kind == Tok::Question || cur_.kind == Tok::Star || cur_.kind == Tok::Plus) {
      const Quantifier q = cur_.kind == Tok::Question ? Quantifier::Optional
                           : cur_.kind == Tok::Star   ? Quantifier::Star
                                                      : Quantifier::Plus;
      shift();
      if (!item.is_symbol() && item.group().quantifier == Quantifier::None) {
        Group g = item.group();
        g.quantifier = q;
        item = Item(std::move(g));
      } else {
        Group g;
        g.alternatives.push_back({std::move(item)});
        g.quantifier = q;
        item = Item(std::move(g));
      }
    }
    return item;
  }

  Item atom() {
    if (cur_.kind == Tok::String) {
      Token t = std::move(cur_);
      shift();
      if (!terminal_seen_.count(t.text)) {
        terminal_seen_.insert(t.text);
        g_.terminals.push_back(t.text);
      }
      return Symbol::terminal(std::move(t.text));
    }
    if (cur_.kind == Tok::Ident) {
      Token t = std::move(cur_);
      shift();
      references_.push_back(t);
      return Symbol::nonterminal(std::move(t.text));
    }
    expect(Tok::LParen);
    Group g;
    g.alternatives = alternatives();
    expect(Tok::RParen);
    return g;
  }

  Lexer lexer_;
  Token cur_;
  Token peek_;
  Grammar g_;
  std::unordered_set<std::string> defined_;
  std::unordered_set<std::string> terminal_seen_;
  std::vector<Token> references_;
};

}  // namespace

Grammar parse_grammar(std::string_view text) { return Parser(text).parse(); }

}  // namespace cq
