#pragma once

// Exact scalars: GMP rationals and Gaussian rationals Q(i).

#include <gmpxx.h>

#include <compare>
#include <ostream>
#include <sstream>
#include <string>

#include "nctorus/core/errors.hpp"

namespace nct {

using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Rational parse_rational(const std::string& text) {
  Rational r;
  if (r.set_str(text, 10) != 0) throw ParseError("not a rational number: '" + text + "'");
  if (r.get_den() == 0) throw ParseError("zero denominator in '" + text + "'");
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

inline double to_double(const Rational& r) { return r.get_d(); }

inline Rational rational_pow(const Rational& base, int e) {
  Rational result = 1;
  Rational b = e < 0 ? Rational(1) / base : base;
  for (int i = 0, n = e < 0 ? -e : e; i < n; ++i) result *= b;
  return result;
}

/// Element of Q(i).
struct Gaussian {
  Rational re = 0;
  Rational im = 0;

  Gaussian() = default;
  Gaussian(Rational r) : re(std::move(r)) {}  // NOLINT(implicit)
  Gaussian(long r) : re(r) {}                 // NOLINT(implicit)
  Gaussian(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  static Gaussian i() { return {0, 1}; }

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }
  bool is_imaginary() const { return re == 0; }

  Gaussian conj() const { return {re, -im}; }
  Gaussian operator-() const { return {-re, -im}; }

  Gaussian& operator+=(const Gaussian& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Gaussian& operator-=(const Gaussian& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  Gaussian& operator*=(const Gaussian& o) {
    Rational r = re * o.re - im * o.im;
    Rational j = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(j);
    return *this;
  }
  Gaussian& operator/=(const Gaussian& o) {
    Rational n = o.re * o.re + o.im * o.im;
    if (n == 0) throw std::domain_error("Gaussian division by zero");
    *this *= o.conj();
    re /= n;
    im /= n;
    return *this;
  }
  friend Gaussian operator+(Gaussian a, const Gaussian& b) { return a += b; }
  friend Gaussian operator-(Gaussian a, const Gaussian& b) { return a -= b; }
  friend Gaussian operator*(Gaussian a, const Gaussian& b) { return a *= b; }
  friend Gaussian operator/(Gaussian a, const Gaussian& b) { return a /= b; }
  friend bool operator==(const Gaussian& a, const Gaussian& b) { return a.re == b.re && a.im == b.im; }
};

/// i^p for any integer p.
inline Gaussian i_pow(int p) {
  switch (((p % 4) + 4) % 4) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
  }
}

inline std::string to_string(const Gaussian& g) {
  if (g.im == 0) return to_string(g.re);
  if (g.re == 0) return to_string(g.im) + "i";
  std::string im = to_string(g.im);
  return to_string(g.re) + (g.im > 0 ? "+" : "") + im + "i";
}

inline std::ostream& operator<<(std::ostream& os, const Gaussian& g) { return os << to_string(g); }

}  // namespace nct
