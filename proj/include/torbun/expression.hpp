#pragma once

// Recursive-descent parser for ring expressions: integers, identifiers,
// + - * ^, parentheses and implicit multiplication ("2a1", "a1(a2 - 1)").
//
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := power (['*'] power)*
//   power  := atom ('^' integer)?
//   atom   := integer | identifier | '(' expr ')'

#include "torbun/core.hpp"

#include <cctype>
#include <functional>
#include <string>
#include <string_view>

namespace torbun {

template <class Ring>
struct ExpressionContext {
  std::function<Ring(const Integer&)> integer;
  std::function<Ring(const std::string&)> identifier;
  std::function<Ring(const Ring&, unsigned)> power;
};

template <class Ring>
class ExpressionParser {
 public:
  ExpressionParser(std::string_view text, const ExpressionContext<Ring>& ctx) : text_(text), ctx_(ctx) {}

  Ring parse() {
    Ring r = expr();
    skip();
    if (pos_ != text_.size()) error("unexpected '" + std::string(1, text_[pos_]) + "'");
    return r;
  }

 private:
  [[noreturn]] void error(const std::string& what) const {
    fail(ErrorCode::ParseError, what + " at column " + std::to_string(pos_ + 1) + " in \"" + std::string(text_) + "\"");
  }
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < text_.size() && text_[pos_] == c;
  }
  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }
  bool starts_atom() {
    skip();
    if (pos_ >= text_.size()) return false;
    char c = text_[pos_];
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '(';
  }

  Ring expr() {
    bool negate = false;
    if (accept('-'))
      negate = true;
    else
      accept('+');
    Ring r = term();
    if (negate) r = ctx_.integer(Integer(-1)) * r;
    for (;;) {
      if (accept('+'))
        r = r + term();
      else if (accept('-'))
        r = r - term();
      else
        return r;
    }
  }

  Ring term() {
    Ring r = power();
    for (;;) {
      if (accept('*'))
        r = r * power();
      else if (starts_atom())
        r = r * power();
      else
        return r;
    }
  }

  Ring power() {
    Ring base = atom();
    if (accept('^')) {
      skip();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) error("expected exponent");
      unsigned long e = std::stoul(std::string(text_.substr(start, pos_ - start)));
      if (e > 64) error("exponent too large");
      return ctx_.power(base, static_cast<unsigned>(e));
    }
    return base;
  }

  Ring atom() {
    skip();
    if (pos_ >= text_.size()) error("unexpected end of expression");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Ring r = expr();
      if (!accept(')')) error("expected ')'");
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return ctx_.integer(Integer(std::string(text_.substr(start, pos_ - start))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      return ctx_.identifier(std::string(text_.substr(start, pos_ - start)));
    }
    error("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  const ExpressionContext<Ring>& ctx_;
  std::size_t pos_ = 0;
};

template <class Ring>
Ring parse_expression(std::string_view text, const ExpressionContext<Ring>& ctx) {
  return ExpressionParser<Ring>(text, ctx).parse();
}

}  // namespace torbun
