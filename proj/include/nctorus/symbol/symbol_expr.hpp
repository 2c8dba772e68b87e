#pragma once

// Noncommutative symbol words: blocks k^a b0^c separated by derivative letters
// of k, times xi1^e1 xi2^e2, an optional sigma1 sigma2 factor and a coefficient in Q(i).

#include <array>
#include <cctype>
#include <compare>
#include <cstring>
#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "nctorus/core/errors.hpp"
#include "nctorus/core/rational.hpp"

namespace nct {

enum class Letter : int { d1 = 0, d2 = 1, d11 = 2, d12 = 3, d22 = 4 };

inline const char* letter_name(Letter l) {
  static const char* names[] = {"d1", "d2", "d11", "d12", "d22"};
  return names[static_cast<int>(l)];
}

inline Letter letter_from_name(const std::string& s) {
  if (s == "d1") return Letter::d1;
  if (s == "d2") return Letter::d2;
  if (s == "d11") return Letter::d11;
  if (s == "d12" || s == "d21") return Letter::d12;
  if (s == "d22") return Letter::d22;
  throw ParseError("unknown derivative letter '" + s + "'");
}

inline std::string letter_latex(Letter l) {
  switch (l) {
    case Letter::d1: return "\\delta_1(k)";
    case Letter::d2: return "\\delta_2(k)";
    case Letter::d11: return "\\delta_{11}(k)";
    case Letter::d12: return "\\delta_{12}(k)";
    default: return "\\delta_{22}(k)";
  }
}

inline bool is_first_order(Letter l) { return l == Letter::d1 || l == Letter::d2; }

/// k^k b0^b; both are functions of k, so they commute.
struct Block {
  int k = 0;
  int b = 0;
  auto operator<=>(const Block&) const = default;
  bool is_unit() const { return k == 0 && b == 0; }
};

struct SymbolWord {
  std::vector<Block> blocks{Block{}};
  std::vector<Letter> letters;
  std::array<int, 2> xi{0, 0};
  bool spin = false;  // sigma1 sigma2 present

  bool operator==(const SymbolWord&) const = default;
  bool operator<(const SymbolWord& o) const {
    if (letters != o.letters) return letters < o.letters;
    if (xi != o.xi) return xi < o.xi;
    if (spin != o.spin) return spin < o.spin;
    return blocks < o.blocks;
  }

  int b0_power() const {
    int c = 0;
    for (const auto& bl : blocks) c += bl.b;
    return c;
  }
  /// Symbol order: xi degree minus twice the number of b0 factors.
  int order() const { return xi[0] + xi[1] - 2 * b0_power(); }
  bool is_even() const { return xi[0] % 2 == 0 && xi[1] % 2 == 0; }
};

/// Product of two words; the returned sign comes from (sigma1 sigma2)^2 = -1.
inline std::pair<SymbolWord, int> word_product(const SymbolWord& a, const SymbolWord& b) {
  SymbolWord r;
  r.blocks = a.blocks;
  r.blocks.back().k += b.blocks.front().k;
  r.blocks.back().b += b.blocks.front().b;
  r.blocks.insert(r.blocks.end(), b.blocks.begin() + 1, b.blocks.end());
  r.letters = a.letters;
  r.letters.insert(r.letters.end(), b.letters.begin(), b.letters.end());
  r.xi = {a.xi[0] + b.xi[0], a.xi[1] + b.xi[1]};
  int sign = 1;
  if (a.spin && b.spin) {
    sign = -1;
  } else {
    r.spin = a.spin || b.spin;
  }
  return {r, sign};
}

class SymbolExpr {
 public:
  using Terms = std::map<SymbolWord, Gaussian>;

  SymbolExpr() = default;
  SymbolExpr(const SymbolWord& w, Gaussian c = 1) { add(w, std::move(c)); }
  SymbolExpr(Gaussian c) { add(SymbolWord{}, std::move(c)); }  // NOLINT(implicit)
  SymbolExpr(long c) : SymbolExpr(Gaussian(c)) {}               // NOLINT(implicit)

  static SymbolExpr k(int a = 1) {
    SymbolWord w;
    w.blocks[0].k = a;
    return w;
  }
  static SymbolExpr b0(int c = 1) {
    SymbolWord w;
    w.blocks[0].b = c;
    return w;
  }
  static SymbolExpr letter(Letter l) {
    SymbolWord w;
    w.blocks = {Block{}, Block{}};
    w.letters = {l};
    return w;
  }
  static SymbolExpr xi(int e1, int e2) {
    SymbolWord w;
    w.xi = {e1, e2};
    return w;
  }
  static SymbolExpr sigma12() {
    SymbolWord w;
    w.spin = true;
    return w;
  }

  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  Gaussian coeff(const SymbolWord& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? Gaussian() : it->second;
  }

  void add(const SymbolWord& w, const Gaussian& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(w, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  SymbolExpr operator-() const {
    SymbolExpr r = *this;
    for (auto& [w, c] : r.terms_) c = -c;
    return r;
  }
  SymbolExpr& operator+=(const SymbolExpr& o) {
    for (const auto& [w, c] : o.terms_) add(w, c);
    return *this;
  }
  SymbolExpr& operator-=(const SymbolExpr& o) {
    for (const auto& [w, c] : o.terms_) add(w, -c);
    return *this;
  }
  friend SymbolExpr operator+(SymbolExpr a, const SymbolExpr& b) { return a += b; }
  friend SymbolExpr operator-(SymbolExpr a, const SymbolExpr& b) { return a -= b; }
  friend SymbolExpr operator*(const Gaussian& s, const SymbolExpr& p) {
    SymbolExpr r;
    if (s.is_zero()) return r;
    for (const auto& [w, c] : p.terms_) r.terms_.emplace(w, s * c);
    return r;
  }
  friend SymbolExpr operator*(const SymbolExpr& p, const SymbolExpr& q) {
    SymbolExpr r;
    for (const auto& [wa, ca] : p.terms_)
      for (const auto& [wb, cb] : q.terms_) {
        auto [w, sign] = word_product(wa, wb);
        r.add(w, sign < 0 ? -(ca * cb) : ca * cb);
      }
    return r;
  }
  SymbolExpr& operator*=(const SymbolExpr& o) { return *this = *this * o; }
  friend bool operator==(const SymbolExpr& a, const SymbolExpr& b) { return a.terms_ == b.terms_; }

  template <class Pred>
  SymbolExpr filter(Pred keep) const {
    SymbolExpr r;
    for (const auto& [w, c] : terms_)
      if (keep(w)) r.terms_.emplace(w, c);
    return r;
  }

 private:
  Terms terms_;
};

// ---- text form -------------------------------------------------------------

namespace detail {

inline std::string power_suffix(int e) {
  if (e == 1) return "";
  if (e >= 0 && e < 10) return "^" + std::to_string(e);
  return "^{" + std::to_string(e) + "}";
}

inline std::string block_latex(const Block& b) {
  std::string s;
  if (b.k != 0) s += "k" + power_suffix(b.k);
  if (b.b != 0) s += std::string(s.empty() ? "" : " ") + "b_0" + power_suffix(b.b);
  return s;
}

inline std::string rational_latex(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return "\\frac{" + r.get_num().get_str() + "}{" + r.get_den().get_str() + "}";
}

}  // namespace detail

/// Word body without coefficient, in the notation used by the golden term lists.
inline std::string word_latex(const SymbolWord& w) {
  std::vector<std::string> parts;
  for (std::size_t i = 0; i < w.blocks.size(); ++i) {
    std::string b = detail::block_latex(w.blocks[i]);
    if (!b.empty()) parts.push_back(b);
    if (i < w.letters.size()) parts.push_back(letter_latex(w.letters[i]));
  }
  if (w.spin) parts.push_back("\\sigma^1\\sigma^2");
  if (w.xi[0]) parts.push_back("\\xi_1" + detail::power_suffix(w.xi[0]));
  if (w.xi[1]) parts.push_back("\\xi_2" + detail::power_suffix(w.xi[1]));
  std::string out;
  for (const auto& p : parts) out += (out.empty() ? "" : " ") + p;
  return out.empty() ? "1" : out;
}

/// Signed term, e.g. "+ 8 k^5 b_0^3 \delta_2(k) b_0 \delta_2(k) k b_0 \xi_2^6" or "- \frac{1}{2} b_0 \delta_{12}(k) b_0 i".
inline std::string term_latex(const SymbolWord& w, const Gaussian& c) {
  std::string body = word_latex(w);
  auto scalar = [&](const Rational& r, bool imag) {
    Rational mag = abs(r);
    std::string s = r < 0 ? "- " : "+ ";
    std::string m = mag == 1 ? "" : detail::rational_latex(mag);
    if (body == "1" && m.empty() && !imag) m = "1";
    std::string out = s + m;
    if (body != "1") out += (m.empty() ? "" : " ") + body;
    if (imag) out += (body == "1" && m.empty()) ? "i" : " i";
    return out;
  };
  if (c.is_imaginary()) return scalar(c.im, true);
  if (c.is_real()) return scalar(c.re, false);
  return "+ (" + to_string(c) + ") " + body;
}

inline std::string to_latex(const SymbolExpr& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (const auto& [w, c] : p.terms()) out += term_latex(w, c) + "\n";
  return out;
}

namespace detail {

class SymbolParser {
 public:
  explicit SymbolParser(const std::string& s) : s_(s) {}

  SymbolExpr parse() {
    SymbolExpr result;
    skip();
    bool have = false;
    Gaussian coeff = 1;
    SymbolExpr word = SymbolExpr(1);
    auto flush = [&]() {
      if (have) result += coeff * word;
      coeff = 1;
      word = SymbolExpr(1);
    };
    while (pos_ < s_.size()) {
      char c = s_[pos_];
      if (c == '+' || c == '-') {
        flush();
        ++pos_;
        coeff = c == '-' ? -1 : 1;
        have = true;
      } else if (c == ',' || c == '.') {
        ++pos_;
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        coeff *= Gaussian(Rational(integer()));
        have = true;
      } else if (starts("\\frac") || starts("\\tfrac")) {
        pos_ += starts("\\frac") ? 5 : 6;
        long a = braced_integer();
        long b = braced_integer();
        coeff *= Gaussian(make_rational(a, b));
        have = true;
      } else if (starts("\\sigma^1\\sigma^2")) {
        pos_ += 16;
        word *= SymbolExpr::sigma12();
        have = true;
      } else if (starts("b_0")) {
        pos_ += 3;
        word *= SymbolExpr::b0(static_cast<int>(exponent()));
        have = true;
      } else if (starts("\\delta")) {
        pos_ += 6;
        Letter l = letter_from_name("d" + subscript());
        expect("(k)");
        long e = exponent();
        for (long i = 0; i < e; ++i) word *= SymbolExpr::letter(l);
        have = true;
      } else if (starts("\\xi_")) {
        pos_ += 4;
        int which = s_[pos_++] - '0';
        if (which != 1 && which != 2) fail("xi index");
        int e = static_cast<int>(exponent());
        word *= which == 1 ? SymbolExpr::xi(e, 0) : SymbolExpr::xi(0, e);
        have = true;
      } else if (c == 'k') {
        ++pos_;
        word *= SymbolExpr::k(static_cast<int>(exponent()));
        have = true;
      } else if (c == 'i' && !std::isalpha(static_cast<unsigned char>(peek_at(pos_ + 1)))) {
        ++pos_;
        coeff *= Gaussian::i();
        have = true;
      } else {
        fail("unexpected token");
      }
      skip();
    }
    flush();
    return result;
  }

 private:
  bool starts(const char* t) const { return s_.compare(pos_, std::strlen(t), t) == 0; }
  char peek_at(std::size_t p) const { return p < s_.size() ? s_[p] : '\0'; }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  void expect(const char* t) {
    if (!starts(t)) fail(std::string("expected '") + t + "'");
    pos_ += std::strlen(t);
  }
  long integer() {
    bool neg = false;
    if (peek_at(pos_) == '-') {
      neg = true;
      ++pos_;
    }
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    long v = std::stol(s_.substr(start, pos_ - start));
    return neg ? -v : v;
  }
  long braced_integer() {
    skip();
    expect("{");
    long v = integer();
    expect("}");
    return v;
  }
  long exponent() {
    if (peek_at(pos_) != '^') return 1;
    ++pos_;
    if (peek_at(pos_) == '{') return braced_integer();
    if (peek_at(pos_) == '-') return integer();
    if (!std::isdigit(static_cast<unsigned char>(peek_at(pos_)))) fail("exponent");
    return s_[pos_++] - '0';
  }
  std::string subscript() {
    expect("_");
    if (peek_at(pos_) == '{') {
      std::size_t close = s_.find('}', pos_);
      if (close == std::string::npos) fail("unterminated subscript");
      std::string r = s_.substr(pos_ + 1, close - pos_ - 1);
      pos_ = close + 1;
      return r;
    }
    return std::string(1, s_[pos_++]);
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at position " + std::to_string(pos_) + " in '" + s_ + "'");
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses a signed sum of terms in the golden-list notation.
inline SymbolExpr parse_symbol_expr(const std::string& text) { return detail::SymbolParser(text).parse(); }

/// Reads a term list file: one term per line, '#' starts a comment line.
inline SymbolExpr parse_symbol_lines(std::istream& in) {
  SymbolExpr r;
  std::string line;
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    r += parse_symbol_expr(line);
  }
  return r;
}

// ---- JSON ------------------------------------------------------------------

inline nlohmann::json coeff_to_json(const Gaussian& c) {
  auto pure = [](const Rational& r, int ipow) {
    return nlohmann::json{{"num", r.get_num().get_str()}, {"den", r.get_den().get_str()}, {"ipow", ipow}};
  };
  if (c.is_real()) return pure(c.re, 0);
  if (c.is_imaginary()) return pure(c.im, 1);
  return {{"re", c.re.get_str()}, {"im", c.im.get_str()}};
}

inline Gaussian coeff_from_json(const nlohmann::json& j) {
  if (j.contains("re")) return {parse_rational(j.at("re").get<std::string>()), parse_rational(j.at("im").get<std::string>())};
  auto str = [](const nlohmann::json& v) { return v.is_string() ? v.get<std::string>() : std::to_string(v.get<long>()); };
  Rational r = parse_rational(str(j.at("num")) + "/" + str(j.at("den")));
  return Gaussian(r) * i_pow(j.value("ipow", 0));
}

inline nlohmann::json to_json(const SymbolExpr& p) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [w, c] : p.terms()) {
    nlohmann::json blocks = nlohmann::json::array();
    for (const auto& b : w.blocks) blocks.push_back({{"k", b.k}, {"b0", b.b}});
    nlohmann::json letters = nlohmann::json::array();
    for (auto l : w.letters) letters.push_back(letter_name(l));
    out.push_back({{"coeff", coeff_to_json(c)},
                   {"spin", w.spin ? "sigma1sigma2" : "1"},
                   {"xi", {w.xi[0], w.xi[1]}},
                   {"blocks", blocks},
                   {"letters", letters}});
  }
  return out;
}

inline SymbolExpr symbol_expr_from_json(const nlohmann::json& j) {
  SymbolExpr r;
  for (const auto& t : j) {
    SymbolWord w;
    w.blocks.clear();
    for (const auto& b : t.at("blocks")) w.blocks.push_back({b.at("k").get<int>(), b.at("b0").get<int>()});
    for (const auto& l : t.at("letters")) w.letters.push_back(letter_from_name(l.get<std::string>()));
    if (w.blocks.size() != w.letters.size() + 1) throw ParseError("word must have one more block than letters");
    w.xi = {t.at("xi")[0].get<int>(), t.at("xi")[1].get<int>()};
    w.spin = t.at("spin").get<std::string>() != "1";
    r.add(w, coeff_from_json(t.at("coeff")));
  }
  return r;
}

}  // namespace nct
