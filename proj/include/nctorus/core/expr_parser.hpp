#pragma once

// Parser for rational expressions in s and t: integers, fractions a/b,
// + - * / ^, parentheses. Implicit multiplication is accepted ("2s", "(s+1)(t+1)").

#include <cctype>
#include <string>

#include "nctorus/core/rational_function.hpp"

namespace nct {

namespace detail {

class ExprParser {
 public:
  explicit ExprParser(std::string text) : src_(std::move(text)) {}

  RationalFunction parse() {
    RationalFunction r = expr();
    skip();
    if (pos_ != src_.size()) fail("unexpected character");
    return r;
  }

 private:
  RationalFunction expr() {
    skip();
    RationalFunction r;
    bool neg = false;
    if (peek() == '+' || peek() == '-') neg = get() == '-';
    r = term();
    if (neg) r = -r;
    while (true) {
      skip();
      char c = peek();
      if (c != '+' && c != '-') break;
      get();
      RationalFunction rhs = term();
      r = c == '+' ? r + rhs : r - rhs;
    }
    return r;
  }

  RationalFunction term() {
    RationalFunction r = factor();
    while (true) {
      skip();
      char c = peek();
      if (c == '*') {
        get();
        r *= factor();
      } else if (c == '/') {
        get();
        r /= factor();
      } else if (c == '(' || c == 's' || c == 't' || std::isdigit(static_cast<unsigned char>(c))) {
        r *= factor();
      } else {
        break;
      }
    }
    return r;
  }

  RationalFunction factor() {
    RationalFunction base = primary();
    skip();
    if (peek() == '^') {
      get();
      skip();
      bool neg = false;
      if (peek() == '-') {
        get();
        neg = true;
      }
      long e = integer();
      base = base.pow(static_cast<int>(neg ? -e : e));
    }
    return base;
  }

  RationalFunction primary() {
    skip();
    char c = peek();
    if (c == '(') {
      get();
      RationalFunction r = expr();
      skip();
      if (get() != ')') fail("expected ')'");
      return r;
    }
    if (c == 's') {
      get();
      return RationalFunction::s();
    }
    if (c == 't') {
      get();
      return RationalFunction::t();
    }
    if (c == '-') {
      get();
      return -factor();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return RationalFunction(Rational(integer()));
    fail("expected a number, variable or '('");
    return {};
  }

  long integer() {
    std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    return std::stol(src_.substr(start, pos_ - start));
  }

  void skip() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }
  char peek() const { return pos_ < src_.size() ? src_[pos_] : '\0'; }
  char get() { return pos_ < src_.size() ? src_[pos_++] : '\0'; }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at position " + std::to_string(pos_) + " in '" + src_ + "'");
  }

  std::string src_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline RationalFunction parse_rational_function(const std::string& text) { return detail::ExprParser(text).parse(); }

}  // namespace nct
