#pragma once

// Polynomials in two commuting indeterminates (s, t) over Q, with exact
// division and gcd. Univariate work is done by leaving t out.

#include <algorithm>
#include <complex>
#include <type_traits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "nctorus/core/rational.hpp"

namespace nct {

template <class T>
struct is_complex : std::false_type {};
template <class T>
struct is_complex<std::complex<T>> : std::true_type {};

namespace detail {

// Dense univariate polynomial over Q, index = degree. Always trimmed.
using UPoly = std::vector<Rational>;

inline void trim(UPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline int degree(const UPoly& p) { return static_cast<int>(p.size()) - 1; }

inline UPoly upoly_mul(const UPoly& a, const UPoly& b) {
  if (a.empty() || b.empty()) return {};
  UPoly r(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

inline UPoly upoly_sub(const UPoly& a, const UPoly& b) {
  UPoly r(std::max(a.size(), b.size()), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

// Returns (quotient, remainder).
inline std::pair<UPoly, UPoly> upoly_divmod(UPoly a, const UPoly& b) {
  if (b.empty()) throw std::domain_error("polynomial division by zero");
  UPoly q;
  const int db = degree(b);
  if (degree(a) >= db) q.assign(a.size() - b.size() + 1, Rational(0));
  while (!a.empty() && degree(a) >= db) {
    const int shift = degree(a) - db;
    Rational c = a.back() / b.back();
    q[shift] = c;
    for (int i = 0; i <= db; ++i) a[shift + i] -= c * b[i];
    trim(a);
  }
  trim(q);
  return {q, a};
}

inline UPoly upoly_monic(UPoly p) {
  if (p.empty()) return p;
  Rational lc = p.back();
  for (auto& c : p) c /= lc;
  return p;
}

inline UPoly upoly_gcd(UPoly a, UPoly b) {
  while (!b.empty()) {
    auto r = upoly_divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return upoly_monic(std::move(a));
}

}  // namespace detail

/// Polynomial in s and t over Q. Exponents are (s-degree, t-degree), both >= 0.
class Polynomial {
 public:
  using Exponent = std::pair<int, int>;
  using Terms = std::map<Exponent, Rational>;

  Polynomial() = default;
  Polynomial(Rational c) {  // NOLINT(implicit)
    if (c != 0) terms_.emplace(Exponent{0, 0}, std::move(c));
  }
  Polynomial(long c) : Polynomial(Rational(c)) {}  // NOLINT(implicit)

  static Polynomial monomial(int ds, int dt, Rational c = 1) {
    if (ds < 0 || dt < 0) throw std::domain_error("negative exponent in Polynomial::monomial");
    Polynomial p;
    if (c != 0) p.terms_.emplace(Exponent{ds, dt}, std::move(c));
    return p;
  }
  static Polynomial s() { return monomial(1, 0); }
  static Polynomial t() { return monomial(0, 1); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Exponent{0, 0}); }

  Rational coeff(int ds, int dt) const {
    auto it = terms_.find({ds, dt});
    return it == terms_.end() ? Rational(0) : it->second;
  }
  Rational constant_term() const { return coeff(0, 0); }

  int degree_s() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, e.first);
    return d;
  }
  int degree_t() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, e.second);
    return d;
  }
  bool uses_t() const { return degree_t() > 0; }
  bool uses_s() const { return degree_s() > 0; }

  /// Leading term in graded order: total degree, then s-degree.
  std::pair<Exponent, Rational> leading_term() const {
    if (terms_.empty()) throw std::domain_error("leading term of zero polynomial");
    auto best = terms_.begin();
    for (auto it = terms_.begin(); it != terms_.end(); ++it) {
      const int tot = it->first.first + it->first.second;
      const int btot = best->first.first + best->first.second;
      if (tot > btot || (tot == btot && it->first.first > best->first.first)) best = it;
    }
    return *best;
  }

  Polynomial operator-() const {
    Polynomial r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
  }
  Polynomial& operator+=(const Polynomial& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  Polynomial& operator*=(const Rational& k) {
    if (k == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= k;
    return *this;
  }
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Rational& k) { return a *= k; }
  friend Polynomial operator*(const Rational& k, Polynomial a) { return a *= k; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial r;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) r.add_term({ea.first + eb.first, ea.second + eb.second}, ca * cb);
    return r;
  }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }

  Polynomial pow(int e) const {
    if (e < 0) throw std::domain_error("negative power of a polynomial");
    Polynomial r = 1;
    for (int i = 0; i < e; ++i) r *= *this;
    return r;
  }

  /// Evaluate at numeric or exact points (T must support * and +).
  template <class T>
  T evaluate(const T& s, const T& t) const {
    T result = T(0);
    for (const auto& [e, c] : terms_) {
      T term = convert<T>(c);
      for (int i = 0; i < e.first; ++i) term = term * s;
      for (int j = 0; j < e.second; ++j) term = term * t;
      result = result + term;
    }
    return result;
  }

  Polynomial swap_variables() const {
    Polynomial r;
    for (const auto& [e, c] : terms_) r.terms_.emplace(Exponent{e.second, e.first}, c);
    return r;
  }

  /// Rename t -> s (used when a two-slot function only depends on t).
  Polynomial rename_t_to_s() const {
    if (uses_s()) throw std::domain_error("rename_t_to_s on a polynomial that depends on s");
    return swap_variables();
  }

  /// Substitute a rational value for t.
  Polynomial substitute_t(const Rational& value) const {
    Polynomial r;
    for (const auto& [e, c] : terms_) r.add_term({e.first, 0}, c * rational_pow(value, e.second));
    return r;
  }
  Polynomial substitute_s(const Rational& value) const {
    Polynomial r;
    for (const auto& [e, c] : terms_) r.add_term({0, e.second}, c * rational_pow(value, e.first));
    return r;
  }

  /// Dense coefficient grid [s-degree][t-degree].
  std::vector<std::vector<Rational>> dense() const {
    std::vector<std::vector<Rational>> g(std::max(degree_s() + 1, 0),
                                         std::vector<Rational>(std::max(degree_t() + 1, 0), Rational(0)));
    for (const auto& [e, c] : terms_) g[e.first][e.second] = c;
    return g;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // ascending total degree reads naturally for the functions we print (1 - s, t^2 - 6t + 1 ...)
    std::vector<std::pair<Exponent, Rational>> order(terms_.begin(), terms_.end());
    std::stable_sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
      const int da = a.first.first + a.first.second, db = b.first.first + b.first.second;
      return da != db ? da < db : a.first.first > b.first.first;
    });
    for (const auto& [e, c] : order) {
      Rational mag = abs(c);
      if (first) {
        if (c < 0) os << "-";
      } else {
        os << (c < 0 ? " - " : " + ");
      }
      first = false;
      const bool unit = mag == 1 && (e.first > 0 || e.second > 0);
      if (!unit) os << mag.get_str();
      bool need_mul = !unit;
      auto var = [&](const char* name, int d) {
        if (d == 0) return;
        if (need_mul) os << "*";
        os << name;
        if (d > 1) os << "^" << d;
        need_mul = true;
      };
      var("s", e.first);
      var("t", e.second);
    }
    return os.str();
  }

  /// View as polynomial in s with coefficients in Q[t].
  std::vector<detail::UPoly> as_s_major() const {
    std::vector<detail::UPoly> r(std::max(degree_s() + 1, 0));
    for (const auto& [e, c] : terms_) {
      auto& u = r[e.first];
      if (static_cast<int>(u.size()) <= e.second) u.resize(e.second + 1, Rational(0));
      u[e.second] = c;
    }
    for (auto& u : r) detail::trim(u);
    return r;
  }
  static Polynomial from_s_major(const std::vector<detail::UPoly>& coeffs) {
    Polynomial p;
    for (std::size_t i = 0; i < coeffs.size(); ++i)
      for (std::size_t j = 0; j < coeffs[i].size(); ++j)
        if (coeffs[i][j] != 0) p.terms_.emplace(Exponent{static_cast<int>(i), static_cast<int>(j)}, coeffs[i][j]);
    return p;
  }

 private:
  template <class T>
  static T convert(const Rational& c) {
    if constexpr (std::is_arithmetic_v<T> || is_complex<T>::value) {
      return T(c.get_d());
    } else {
      return T(c);
    }
  }

  void add_term(const Exponent& e, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Terms terms_;
};

namespace detail {

using SPoly = std::vector<UPoly>;  // s-major: index = s-degree, entries in Q[t]

inline void trim(SPoly& p) {
  while (!p.empty() && p.back().empty()) p.pop_back();
}

inline UPoly content(const SPoly& p) {
  UPoly g;
  for (const auto& c : p) {
    if (c.empty()) continue;
    g = g.empty() ? upoly_monic(c) : upoly_gcd(g, c);
    if (g.size() == 1) break;
  }
  return g;
}

inline SPoly divide_by_upoly(const SPoly& p, const UPoly& d) {
  SPoly r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i].empty()) continue;
    auto [q, rem] = upoly_divmod(p[i], d);
    if (!rem.empty()) throw std::logic_error("inexact content division");
    r[i] = std::move(q);
  }
  return r;
}

inline SPoly primitive_part(const SPoly& p) {
  if (p.empty()) return p;
  return divide_by_upoly(p, content(p));
}

// Pseudo-remainder of a by b with respect to s.
inline SPoly pseudo_remainder(SPoly a, const SPoly& b) {
  const int db = static_cast<int>(b.size()) - 1;
  const UPoly& lb = b.back();
  while (!a.empty() && static_cast<int>(a.size()) - 1 >= db) {
    const int shift = static_cast<int>(a.size()) - 1 - db;
    UPoly la = a.back();
    for (auto& c : a) c = upoly_mul(c, lb);
    for (int i = 0; i <= db; ++i) a[shift + i] = upoly_sub(a[shift + i], upoly_mul(la, b[i]));
    trim(a);
  }
  return a;
}

}  // namespace detail

/// Exact quotient a / b, or nullopt when b does not divide a.
inline std::optional<Polynomial> exact_divide(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw std::domain_error("exact_divide by zero polynomial");
  if (a.is_zero()) return Polynomial();
  auto rem = a.as_s_major();
  auto div = b.as_s_major();
  const int db = static_cast<int>(div.size()) - 1;
  std::vector<detail::UPoly> quot(rem.size() >= div.size() ? rem.size() - div.size() + 1 : 0);
  while (!rem.empty() && static_cast<int>(rem.size()) - 1 >= db) {
    const int shift = static_cast<int>(rem.size()) - 1 - db;
    auto [q, r] = detail::upoly_divmod(rem.back(), div.back());
    if (!r.empty()) return std::nullopt;
    for (int i = 0; i <= db; ++i) rem[shift + i] = detail::upoly_sub(rem[shift + i], detail::upoly_mul(q, div[i]));
    quot[shift] = std::move(q);
    detail::trim(rem);
  }
  if (!rem.empty()) return std::nullopt;
  return Polynomial::from_s_major(quot);
}

/// Leading-coefficient-one normalization (graded order).
inline Polynomial make_monic(const Polynomial& p) {
  if (p.is_zero()) return p;
  return p * (Rational(1) / p.leading_term().second);
}

/// Greatest common divisor, normalized monic. gcd(0,0) = 0.
inline Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return make_monic(b);
  if (b.is_zero()) return make_monic(a);
  if (a.is_constant() || b.is_constant()) return Polynomial(1);
  auto pa = a.as_s_major();
  auto pb = b.as_s_major();
  const detail::UPoly ca = detail::content(pa);
  const detail::UPoly cb = detail::content(pb);
  const detail::UPoly g = detail::upoly_gcd(ca, cb);
  pa = detail::divide_by_upoly(pa, ca);
  pb = detail::divide_by_upoly(pb, cb);
  if (pa.size() < pb.size()) std::swap(pa, pb);
  detail::SPoly result;
  while (true) {
    if (pb.empty()) {
      result = pa;
      break;
    }
    if (pb.size() == 1) {
      result = detail::SPoly{detail::UPoly{Rational(1)}};
      break;
    }
    auto r = detail::pseudo_remainder(pa, pb);
    pa = std::move(pb);
    pb = detail::primitive_part(r);
  }
  result = detail::primitive_part(result);
  for (auto& c : result) c = detail::upoly_mul(c, g);
  return make_monic(Polynomial::from_s_major(result));
}

}  // namespace nct
