#pragma once

// Commutative image of symbol expressions (theta = 0) and their xi-integrals.

#include <array>
#include <map>
#include <string>

#include "nctorus/symbol/symbol_expr.hpp"

namespace nct {

/// k^kpow b0^b0 prod letters^e xi1^xi[0] xi2^xi[1] (sigma1 sigma2)^spin, all commuting.
struct ClassicalMonomial {
  int kpow = 0;
  int b0 = 0;
  std::array<int, 5> letters{0, 0, 0, 0, 0};
  std::array<int, 2> xi{0, 0};
  bool spin = false;
  auto operator<=>(const ClassicalMonomial&) const = default;
};

class ClassicalExpr {
 public:
  using Terms = std::map<ClassicalMonomial, Gaussian>;

  ClassicalExpr() = default;
  ClassicalExpr(const ClassicalMonomial& m, Gaussian c) { add(m, c); }

  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  void add(const ClassicalMonomial& m, const Gaussian& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  ClassicalExpr& operator+=(const ClassicalExpr& o) {
    for (const auto& [m, c] : o.terms_) add(m, c);
    return *this;
  }
  friend ClassicalExpr operator+(ClassicalExpr a, const ClassicalExpr& b) { return a += b; }
  friend ClassicalExpr operator-(ClassicalExpr a, const ClassicalExpr& b) {
    for (const auto& [m, c] : b.terms_) a.add(m, -c);
    return a;
  }
  friend ClassicalExpr operator*(const Gaussian& s, ClassicalExpr a) {
    ClassicalExpr r;
    for (const auto& [m, c] : a.terms_) r.add(m, s * c);
    return r;
  }
  friend ClassicalExpr operator*(const ClassicalExpr& a, const ClassicalExpr& b) {
    ClassicalExpr r;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) {
        ClassicalMonomial m;
        m.kpow = ma.kpow + mb.kpow;
        m.b0 = ma.b0 + mb.b0;
        for (int i = 0; i < 5; ++i) m.letters[i] = ma.letters[i] + mb.letters[i];
        m.xi = {ma.xi[0] + mb.xi[0], ma.xi[1] + mb.xi[1]};
        Gaussian c = ca * cb;
        if (ma.spin && mb.spin) {
          c = -c;
        } else {
          m.spin = ma.spin || mb.spin;
        }
        r.add(m, c);
      }
    return r;
  }
  friend bool operator==(const ClassicalExpr& a, const ClassicalExpr& b) { return a.terms_ == b.terms_; }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [m, c] : terms_) {
      SymbolWord w;
      w.blocks[0] = {m.kpow, m.b0};
      for (int l = 0; l < 5; ++l)
        for (int e = 0; e < m.letters[l]; ++e) {
          w.letters.push_back(static_cast<Letter>(l));
          w.blocks.push_back(Block{});
        }
      w.xi = m.xi;
      w.spin = m.spin;
      out += term_latex(w, c) + "\n";
    }
    return out;
  }

 private:
  Terms terms_;
};

/// Let every letter commute.
inline ClassicalExpr collapse(const SymbolExpr& p) {
  ClassicalExpr r;
  for (const auto& [w, c] : p.terms()) {
    ClassicalMonomial m;
    for (const auto& b : w.blocks) {
      m.kpow += b.k;
      m.b0 += b.b;
    }
    for (auto l : w.letters) m.letters[static_cast<int>(l)] += 1;
    m.xi = w.xi;
    m.spin = w.spin;
    r.add(m, c);
  }
  return r;
}

namespace detail {

// Gamma(a + 1/2) / sqrt(pi) for integer a >= 0
inline Rational gamma_half_over_sqrt_pi(int a) {
  Rational r = 1;
  for (int i = 1; i <= a; ++i) r *= make_rational(2 * i - 1, 2);
  return r;
}

inline Rational factorial(int n) {
  Rational r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

}  // namespace detail

/// Integral over R^2 of xi1^{2a} xi2^{2b} b0^m with b0 = 1/(1 + xi1^2 + k^2 xi2^2):
/// pi * k^{-2b-1} * [Gamma(a+1/2) Gamma(b+1/2) / pi] * Gamma(m-a-b-1) / Gamma(m).
/// Returns the rational factor and the k power.
inline std::pair<Rational, int> classical_xi_integral(int a, int b, int m) {
  const int p = m - a - b - 1;
  if (p <= 0) throw ConvergenceError("divergent classical xi-integral");
  Rational r = detail::gamma_half_over_sqrt_pi(a) * detail::gamma_half_over_sqrt_pi(b) * detail::factorial(p - 1) /
               detail::factorial(m - 1);
  return {r, -2 * b - 1};
}

/// xi-integral of a collapsed expression; the result carries one implicit factor of pi
/// and contains no b0 or xi. Odd xi powers integrate to zero.
inline ClassicalExpr integrate_xi(const ClassicalExpr& p) {
  ClassicalExpr r;
  for (const auto& [m, c] : p.terms()) {
    if (m.xi[0] % 2 || m.xi[1] % 2) continue;
    auto [factor, kp] = classical_xi_integral(m.xi[0] / 2, m.xi[1] / 2, m.b0);
    ClassicalMonomial out = m;
    out.kpow += kp;
    out.b0 = 0;
    out.xi = {0, 0};
    r.add(out, c * Gaussian(factor));
  }
  return r;
}

/// Shorthand for k^kpow times a product of letters.
inline ClassicalExpr classical_term(Rational coeff, int kpow, std::initializer_list<Letter> letters) {
  ClassicalMonomial m;
  m.kpow = kpow;
  for (auto l : letters) m.letters[static_cast<int>(l)] += 1;
  return ClassicalExpr(m, Gaussian(std::move(coeff)));
}

}  // namespace nct
