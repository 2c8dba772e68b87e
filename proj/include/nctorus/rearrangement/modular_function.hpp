#pragma once

// i^ipow * pi^pi_power * k^k_prefactor * F(s, t), F in Q(s, t). k stands on the left.

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "nctorus/core/errors.hpp"
#include "nctorus/core/expr_parser.hpp"
#include "nctorus/core/rational_function.hpp"

namespace nct {

class ModularFunction {
 public:
  ModularFunction() = default;
  ModularFunction(int k_prefactor, int pi_power, RationalFunction value, int variables = 0, int ipow = 0)
      : k_prefactor_(k_prefactor), pi_power_(pi_power), ipow_(0), value_(std::move(value)) {
    apply_ipow(ipow);
    variables_ = variables > 0 ? variables : (value_.uses_t() ? 2 : 1);
    check();
  }

  static ModularFunction zero(int k_prefactor, int variables) { return {k_prefactor, 1, RationalFunction(), variables}; }

  int k_prefactor() const { return k_prefactor_; }
  int pi_power() const { return pi_power_; }
  int ipow() const { return ipow_; }
  int variables() const { return variables_; }
  const RationalFunction& value() const { return value_; }
  bool is_zero() const { return value_.is_zero(); }

  ModularFunction operator-() const {
    ModularFunction r = *this;
    r.value_ = -r.value_;
    return r;
  }
  ModularFunction& operator+=(const ModularFunction& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) {
      const int vars = std::max(variables_, o.variables_);
      *this = o;
      variables_ = vars;
      return *this;
    }
    if (k_prefactor_ != o.k_prefactor_ || pi_power_ != o.pi_power_)
      throw ShapeError("adding modular functions with different k or pi prefactors");
    if (ipow_ != o.ipow_) throw ShapeError("adding real and imaginary modular functions");
    value_ += o.value_;
    variables_ = std::max(variables_, o.variables_);
    return *this;
  }
  friend ModularFunction operator+(ModularFunction a, const ModularFunction& b) { return a += b; }
  friend ModularFunction operator-(ModularFunction a, const ModularFunction& b) { return a += -b; }

  /// Multiply by c * i^ipow.
  ModularFunction scaled(const Rational& c, int ipow = 0) const {
    ModularFunction r = *this;
    r.value_ = r.value_ * RationalFunction(c);
    r.apply_ipow(ipow);
    return r;
  }
  ModularFunction times(const RationalFunction& f) const {
    ModularFunction r = *this;
    r.value_ = r.value_ * f;
    if (r.value_.uses_t()) r.variables_ = 2;
    return r;
  }

  /// Fix t (two-variable functions become one-variable) or s.
  ModularFunction substitute_t(const Rational& t) const {
    ModularFunction r = *this;
    r.value_ = value_.substitute_t(t);
    r.variables_ = 1;
    return r;
  }
  /// s := value. For two-variable functions the result is renamed to a function of s.
  ModularFunction substitute_s(const Rational& s) const {
    ModularFunction r = *this;
    r.value_ = value_.substitute_s(s);
    if (variables_ == 2) r.value_ = r.value_.rename_t_to_s();
    r.variables_ = 1;
    return r;
  }
  /// Rename t to s in a function that only depends on t.
  ModularFunction rename_t_to_s() const {
    ModularFunction r = *this;
    r.value_ = value_.rename_t_to_s();
    r.variables_ = 1;
    return r;
  }
  ModularFunction compose(const RationalFunction& s, const RationalFunction& t) const {
    ModularFunction r = *this;
    r.value_ = value_.compose(s, t);
    return r;
  }

  /// Exact scalar value at (s, t) without the i, pi and k factors.
  Rational rational_at(const Rational& s, const Rational& t = 1) const { return value_.evaluate(s, t); }

  /// pi^pi_power * F(s, t) as a double (i and k factors excluded).
  double evaluate(double s, double t = 1.0) const {
    return std::pow(std::numbers::pi, pi_power_) * value_.evaluate(s, t);
  }

  friend bool operator==(const ModularFunction& a, const ModularFunction& b) {
    if (a.is_zero() && b.is_zero()) return true;
    return a.k_prefactor_ == b.k_prefactor_ && a.pi_power_ == b.pi_power_ && a.ipow_ == b.ipow_ && a.value_ == b.value_;
  }

  std::string to_string() const;

 private:
  void apply_ipow(int p) {
    int total = ((ipow_ + p) % 4 + 4) % 4;
    if (total >= 2) {
      value_ = -value_;
      total -= 2;
    }
    ipow_ = total;
  }
  void check() const {
    if (variables_ == 1 && value_.uses_t()) throw ShapeError("one-variable modular function mentions t");
  }

  int k_prefactor_ = 0;
  int pi_power_ = 1;
  int ipow_ = 0;
  int variables_ = 1;
  RationalFunction value_;
};

namespace detail {

inline std::string superscript(int e) {
  static const char* digits[] = {"⁰", "¹", "²", "³", "⁴", "⁵", "⁶", "⁷", "⁸", "⁹"};
  std::string out = e < 0 ? "⁻" : "";
  std::string d = std::to_string(std::abs(e));
  for (char c : d) out += digits[c - '0'];
  return out;
}

inline std::string unicode_poly(const Polynomial& p) {
  std::string s = p.to_string();
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '*' || s[i] == ' ') continue;
    if (s[i] == '^') {
      std::size_t j = i + 1;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out += superscript(std::stoi(s.substr(i + 1, j - i - 1)));
      i = j - 1;
      continue;
    }
    if (s[i] == '-') {
      out += "−";
      continue;
    }
    out += s[i];
  }
  return out;
}

/// Split off the factors s, t, (s+1), (t+1), (s+t); returns (factor text, leftover).
inline std::pair<std::string, Polynomial> factor_known(Polynomial p) {
  const std::vector<std::pair<std::string, Polynomial>> known = {
      {"s", Polynomial::s()},
      {"t", Polynomial::t()},
      {"(s+1)", Polynomial::s() + Polynomial(1)},
      {"(t+1)", Polynomial::t() + Polynomial(1)},
      {"(s+t)", Polynomial::s() + Polynomial::t()},
  };
  std::string text;
  for (const auto& [name, f] : known) {
    int e = 0;
    while (!p.is_constant()) {
      auto q = exact_divide(p, f);
      if (!q) break;
      p = *q;
      ++e;
    }
    if (e > 0) text += name + (e > 1 ? superscript(e) : "");
  }
  return {text, p};
}

}  // namespace detail

/// Text form such as "−(2π/3)k⁻³(3+4s+8t+...)/((s+1)(t+1)³(s+t))".
inline std::string ModularFunction::to_string() const {
  if (is_zero()) return "0";
  auto [den_text, den_rest] = detail::factor_known(value_.den());
  Rational scale = den_rest.constant_term();
  if (!den_rest.is_constant()) {
    den_text += "(" + detail::unicode_poly(den_rest) + ")";
    scale = 1;
  }
  Polynomial num = value_.num();
  // pull the content of the numerator into the scalar
  mpz_class g = 0, l = 1;
  for (const auto& [e, c] : num.terms()) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num().get_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
  }
  Rational content(g, l);
  content.canonicalize();
  {
    // lowest-degree term of the printed numerator is positive
    auto low = num.terms().begin();
    for (auto it = num.terms().begin(); it != num.terms().end(); ++it)
      if (it->first.first + it->first.second < low->first.first + low->first.second) low = it;
    if (low->second < 0) content = -content;
  }
  num *= Rational(1) / content;
  Rational scalar = content / scale;

  std::ostringstream os;
  if (scalar < 0) os << "−";
  Rational mag = abs(scalar);
  std::string pi = pi_power_ == 0 ? "" : (pi_power_ == 1 ? "π" : "π" + detail::superscript(pi_power_));
  std::string ipart = ipow_ == 1 ? "i" : "";
  std::string lead = mag.get_num() == 1 ? ipart + pi : mag.get_num().get_str() + ipart + pi;
  if (lead.empty()) lead = "1";
  if (mag.get_den() != 1) lead += "/" + mag.get_den().get_str();
  if (lead.find('/') == std::string::npos)
    os << lead;
  else
    os << "(" << lead << ")";
  if (k_prefactor_ != 0) os << "k" << detail::superscript(k_prefactor_);
  std::string num_text = detail::unicode_poly(num);
  if (num_text != "1") os << "(" << num_text << ")";
  if (!den_text.empty()) os << "/(" << den_text << ")";
  return os.str();
}

inline nlohmann::json to_json(const ModularFunction& f) {
  auto grid = [](const Polynomial& p) {
    nlohmann::json g = nlohmann::json::array();
    for (const auto& row : p.dense()) {
      nlohmann::json r = nlohmann::json::array();
      for (const auto& c : row) r.push_back(c.get_str());
      g.push_back(r);
    }
    return g;
  };
  return {{"k_prefactor", f.k_prefactor()},
          {"pi_power", f.pi_power()},
          {"ipow", f.ipow()},
          {"variables", f.variables()},
          {"num", grid(f.value().num())},
          {"den", grid(f.value().den())},
          {"text", f.to_string()}};
}

inline ModularFunction modular_function_from_json(const nlohmann::json& j) {
  auto poly = [](const nlohmann::json& g) {
    Polynomial p;
    for (std::size_t i = 0; i < g.size(); ++i)
      for (std::size_t k = 0; k < g[i].size(); ++k)
        p += Polynomial::monomial(static_cast<int>(i), static_cast<int>(k), parse_rational(g[i][k].get<std::string>()));
    return p;
  };
  return {j.at("k_prefactor").get<int>(), j.at("pi_power").get<int>(), RationalFunction(poly(j.at("num")), poly(j.at("den"))),
          j.value("variables", 0), j.value("ipow", 0)};
}

}  // namespace nct
