// Copyright 2026 The cqtool Authors
// SPDX-License-Identifier: Apache-2.0

#include "cq/minilang.hpp"

#include <cctype>
#include <map>
#include <optional>
#include <vector>

#include <fmt/format.h>

namespace cq::minilang {

namespace {

enum class Type { Int, Bool };

const char* type_name(Type t) { return t == Type::Int ? "int" : "bool"; }

struct Token {
  enum class Kind { Ident, Number, Keyword, Punct, End } kind;
  std::string text;
  std::size_t line, column;
};

struct Failure {
  std::size_t line, column;
  std::string message;
};

bool is_keyword(std::string_view s) {
  return s == "int" || s == "bool" || s == "return" || s == "true" || s == "false";
}

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (; n > 0; --n, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    const unsigned char c = static_cast<unsigned char>(src[i]);
    if (std::isspace(c)) {
      advance(1);
      continue;
    }
    const std::size_t l = line, k = col, begin = i;
    if (std::isalpha(c) || c == '_') {
      std::size_t j = i;
      while (j < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
        ++j;
      std::string word(src.substr(begin, j - begin));
      const auto kind = is_keyword(word) ? Token::Kind::Keyword : Token::Kind::Ident;
      out.push_back({kind, std::move(word), l, k});
      advance(j - i);
    } else if (std::isdigit(c)) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      out.push_back({Token::Kind::Number, std::string(src.substr(begin, j - begin)), l, k});
      advance(j - i);
    } else if (std::string_view("=;&<+-*!()").find(static_cast<char>(c)) !=
               std::string_view::npos) {
      out.push_back({Token::Kind::Punct, std::string(1, static_cast<char>(c)), l, k});
      advance(1);
    } else {
      throw Failure{l, k, fmt::format("unexpected character 0x{:02x}", c)};
    }
  }
  out.push_back({Token::Kind::End, "", line, col});
  return out;
}

class Checker {
 public:
  explicit Checker(std::vector<Token> toks) : toks_(std::move(toks)) {}

  void program() {
    while (!at_keyword("return")) statement();
    next();
    const Token& where = peek();
    const Type t = expr();
    expect(";");
    if (t != Type::Int)
      fail(where, fmt::format("return value has type {}, expected int", type_name(t)));
    if (peek().kind != Token::Kind::End) fail(peek(), "text after the return statement");
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool at_keyword(std::string_view k) const {
    return peek().kind == Token::Kind::Keyword && peek().text == k;
  }
  bool at_punct(std::string_view p) const {
    return peek().kind == Token::Kind::Punct && peek().text == p;
  }

  [[noreturn]] void fail(const Token& t, std::string msg) const {
    throw Failure{t.line, t.column, std::move(msg)};
  }

  std::string describe(const Token& t) const {
    return t.kind == Token::Kind::End ? "end of input" : fmt::format("'{}'", t.text);
  }

  void expect(std::string_view p) {
    if (!at_punct(p)) fail(peek(), fmt::format("expected '{}', found {}", p, describe(peek())));
    next();
  }

  const Token& ident() {
    if (peek().kind != Token::Kind::Ident)
      fail(peek(), fmt::format("expected an identifier, found {}", describe(peek())));
    return next();
  }

  void statement() {
    if (at_keyword("int") || at_keyword("bool")) {
      const Type declared = next().text == "int" ? Type::Int : Type::Bool;
      const Token& name = ident();
      if (scope_.count(name.text)) fail(name, fmt::format("redeclaration of '{}'", name.text));
      expect("=");
      expr();
      expect(";");
      scope_[name.text] = declared;
      return;
    }
    if (peek().kind != Token::Kind::Ident)
      fail(peek(), fmt::format("expected a statement, found {}", describe(peek())));
    const Token& name = next();
    const auto it = scope_.find(name.text);
    if (it == scope_.end()) fail(name, fmt::format("assignment to undeclared '{}'", name.text));
    expect("=");
    expr();
    expect(";");
  }

  Type expr() {
    Type t = cmp();
    while (at_punct("&")) {
      next();
      cmp();
      t = Type::Bool;
    }
    return t;
  }

  Type cmp() {
    Type t = sum();
    if (at_punct("<")) {
      next();
      sum();
      t = Type::Bool;
    }
    return t;
  }

  Type sum() {
    Type t = unary();
    while (at_punct("+") || at_punct("-") || at_punct("*")) {
      next();
      unary();
      t = Type::Int;
    }
    return t;
  }

  Type unary() {
    if (at_punct("!")) {
      next();
      unary();
      return Type::Bool;
    }
    if (at_punct("-")) {
      next();
      unary();
      return Type::Int;
    }
    return atom();
  }

  Type atom() {
    const Token& t = peek();
    if (t.kind == Token::Kind::Number) {
      next();
      return Type::Int;
    }
    if (at_keyword("true") || at_keyword("false")) {
      next();
      return Type::Bool;
    }
    if (t.kind == Token::Kind::Ident) {
      next();
      const auto it = scope_.find(t.text);
      if (it == scope_.end()) fail(t, fmt::format("use of undeclared '{}'", t.text));
      return it->second;
    }
    if (at_punct("(")) {
      next();
      const Type inner = expr();
      expect(")");
      return inner;
    }
    fail(t, fmt::format("expected an expression, found {}", describe(t)));
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::map<std::string, Type, std::less<>> scope_;
};

}  // namespace

CheckResult check(std::string_view source) {
  try {
    Checker c(lex(source));
    c.program();
    return CheckResult{true, 0, 0, {}};
  } catch (const Failure& f) {
    return CheckResult{false, f.line, f.column, f.message};
  }
}

}  // namespace cq::minilang
