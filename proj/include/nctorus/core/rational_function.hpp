#pragma once

// Elements of Q(s, t) kept as reduced fractions num/den with den monic.

#include <ostream>
#include <string>

#include "nctorus/core/errors.hpp"
#include "nctorus/core/polynomial.hpp"

namespace nct {

class RationalFunction {
 public:
  RationalFunction() : num_(), den_(1) {}
  RationalFunction(Polynomial p) : num_(std::move(p)), den_(1) {}  // NOLINT(implicit)
  RationalFunction(Rational c) : num_(std::move(c)), den_(1) {}    // NOLINT(implicit)
  RationalFunction(long c) : num_(c), den_(1) {}                   // NOLINT(implicit)
  RationalFunction(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

  static RationalFunction s() { return Polynomial::s(); }
  static RationalFunction t() { return Polynomial::t(); }

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool uses_t() const { return num_.uses_t() || den_.uses_t(); }
  bool uses_s() const { return num_.uses_s() || den_.uses_s(); }

  RationalFunction operator-() const {
    RationalFunction r = *this;
    r.num_ = -r.num_;
    return r;
  }
  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    if (a.den_ == b.den_) return {a.num_ + b.num_, a.den_};
    return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
  }
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    return {a.num_ * b.num_, a.den_ * b.den_};
  }
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    if (b.is_zero()) throw PoleError("division by the zero rational function");
    return {a.num_ * b.den_, a.den_ * b.num_};
  }
  RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
  RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
  RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }
  RationalFunction& operator/=(const RationalFunction& o) { return *this = *this / o; }
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  RationalFunction pow(int e) const {
    if (e < 0) return RationalFunction(1) / pow(-e);
    RationalFunction r = 1;
    for (int i = 0; i < e; ++i) r *= *this;
    return r;
  }

  /// Replace s and t by rational functions.
  RationalFunction compose(const RationalFunction& s_val, const RationalFunction& t_val) const {
    RationalFunction n = num_.evaluate<RationalFunction>(s_val, t_val);
    RationalFunction d = den_.evaluate<RationalFunction>(s_val, t_val);
    if (d.is_zero()) throw PoleError("pole at substitution point");
    return n / d;
  }

  RationalFunction substitute_t(const Rational& v) const {
    Polynomial d = den_.substitute_t(v);
    if (d.is_zero()) throw PoleError("pole at t = " + v.get_str());
    return {num_.substitute_t(v), d};
  }
  RationalFunction substitute_s(const Rational& v) const {
    Polynomial d = den_.substitute_s(v);
    if (d.is_zero()) throw PoleError("pole at s = " + v.get_str());
    return {num_.substitute_s(v), d};
  }
  RationalFunction swap_variables() const { return {num_.swap_variables(), den_.swap_variables()}; }
  RationalFunction rename_t_to_s() const { return {num_.rename_t_to_s(), den_.rename_t_to_s()}; }

  Rational evaluate(const Rational& s, const Rational& t) const {
    Rational d = den_.evaluate<Rational>(s, t);
    if (d == 0) throw PoleError("pole at (" + s.get_str() + ", " + t.get_str() + ")");
    return num_.evaluate<Rational>(s, t) / d;
  }
  double evaluate(double s, double t) const { return num_.evaluate<double>(s, t) / den_.evaluate<double>(s, t); }

  /// Constant value if the function does not depend on s or t.
  std::optional<Rational> constant() const {
    if (!num_.is_constant() || !den_.is_constant()) return std::nullopt;
    return num_.constant_term() / den_.constant_term();
  }

  std::string to_string() const {
    if (den_ == Polynomial(1)) return num_.to_string();
    return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
  }
  friend std::ostream& operator<<(std::ostream& os, const RationalFunction& f) { return os << f.to_string(); }

 private:
  void normalize() {
    if (den_.is_zero()) throw PoleError("rational function with zero denominator");
    if (num_.is_zero()) {
      den_ = Polynomial(1);
      return;
    }
    Polynomial g = gcd(num_, den_);
    if (!g.is_constant()) {
      num_ = *exact_divide(num_, g);
      den_ = *exact_divide(den_, g);
    }
    Rational lc = den_.leading_term().second;
    if (lc != 1) {
      Rational inv = Rational(1) / lc;
      num_ *= inv;
      den_ *= inv;
    }
  }

  Polynomial num_;
  Polynomial den_;
};

}  // namespace nct
