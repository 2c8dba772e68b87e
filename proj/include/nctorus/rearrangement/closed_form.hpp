#pragma once

// Closed-form xi-integration of one descriptor.
//
// With u = (1+v^2) r and r = w^2 the (u, v) integral splits into
//   v-part: int v^{2k1} (1+v^2)^{-(M-k2-1/2)} dv = 1/2 B(k1+1/2, M-k1-k2-1)   (rational)
//   w-part: int w^{2k2} / ((1+w^2)^m1 (1+s^2 w^2)^m2 (1+t^2 w^2)^m3) dw     (pi * Q(s,t))
// and the w-part is done by partial fractions in x = w^2.

#include <array>
#include <vector>

#include "nctorus/core/rational_function.hpp"
#include "nctorus/rearrangement/descriptor.hpp"
#include "nctorus/rearrangement/modular_function.hpp"

namespace nct {

namespace detail {

inline Rational binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  Rational r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// B(a + 1/2, n) for integers a >= 0, n >= 1
inline Rational beta_half_integer(int a, int n) {
  Rational r = 1;
  for (int i = 1; i < n; ++i) r *= i;
  for (int i = 0; i < n; ++i) r /= make_rational(2 * a + 1 + 2 * i, 2);
  return r;
}

// B(1/2, b - 1/2) / pi for b >= 1
inline Rational beta_half_over_pi(int b) {
  Rational r = 1;
  for (int i = 1; i < b; ++i) r *= make_rational(2 * i - 1, 2);
  for (int i = 2; i < b; ++i) r /= i;
  return r;
}

inline std::array<RationalFunction, 3> pole_roots() { return {RationalFunction(1), RationalFunction::s(), RationalFunction::t()}; }

// truncated product of power series
inline std::vector<RationalFunction> series_mul(const std::vector<RationalFunction>& a, const std::vector<RationalFunction>& b) {
  std::vector<RationalFunction> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; i + j < a.size() && j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

}  // namespace detail

/// coeff / (x + 1/beta)^power with beta = 1, s^2 or t^2 (pole 0, 1, 2).
struct PartialFractionTerm {
  int pole = 0;
  int power = 1;
  RationalFunction coeff;
};

/// Decomposition of x^k2 / prod_c (1 + beta_c x)^{m_c}.
struct PartialFractions {
  int k2 = 0;
  std::array<int, 3> m{0, 0, 0};
  std::vector<PartialFractionTerm> terms;

  static RationalFunction beta(int pole) {
    const auto r = detail::pole_roots()[pole];
    return r * r;
  }

  RationalFunction original_at(const Rational& x) const {
    RationalFunction den = 1;
    for (int c = 0; c < 3; ++c) den *= (RationalFunction(1) + beta(c) * RationalFunction(x)).pow(m[c]);
    return RationalFunction(rational_pow(x, k2)) / den;
  }

  RationalFunction recompose_at(const Rational& x) const {
    RationalFunction sum;
    for (const auto& t : terms)
      sum += t.coeff / (RationalFunction(x) + RationalFunction(1) / beta(t.pole)).pow(t.power);
    return sum;
  }
};

inline PartialFractions partial_fractions(int k2, const std::array<int, 3>& m) {
  const int M = m[0] + m[1] + m[2];
  if (k2 >= M) throw ConvergenceError("numerator degree not below denominator degree");
  PartialFractions pf;
  pf.k2 = k2;
  pf.m = m;
  for (int c = 0; c < 3; ++c) {
    const int mc = m[c];
    if (mc == 0) continue;
    const RationalFunction bc = PartialFractions::beta(c);
    const RationalFunction inv_bc = RationalFunction(1) / bc;
    // x^k2 = (y - 1/beta_c)^k2 around the pole y = x + 1/beta_c = 0
    std::vector<RationalFunction> ser(mc);
    for (int i = 0; i < mc && i <= k2; ++i) ser[i] = RationalFunction(detail::binomial(k2, i)) * (-inv_bc).pow(k2 - i);
    for (auto& a : ser) a = a / bc.pow(mc);
    for (int d = 0; d < 3; ++d) {
      if (d == c || m[d] == 0) continue;
      // 1 + beta_d x = alpha + beta_d y with alpha = 1 - beta_d / beta_c
      const RationalFunction bd = PartialFractions::beta(d);
      const RationalFunction alpha = RationalFunction(1) - bd / bc;
      const RationalFunction ratio = bd / alpha;
      std::vector<RationalFunction> factor(mc);
      RationalFunction lead = alpha.pow(-m[d]);
      for (int j = 0; j < mc; ++j) {
        Rational sgn = j % 2 ? -1 : 1;
        factor[j] = lead * RationalFunction(sgn * detail::binomial(m[d] + j - 1, j)) * ratio.pow(j);
      }
      ser = detail::series_mul(ser, factor);
    }
    for (int j = 0; j < mc; ++j)
      if (!ser[j].is_zero()) pf.terms.push_back({c, mc - j, ser[j]});
  }
  return pf;
}

/// (1/pi) int_0^inf w^{2k2} / prod (1 + beta_c w^2)^{m_c} dw as an element of Q(s,t).
inline RationalFunction w_integral_over_pi(int k2, const std::array<int, 3>& m) {
  const PartialFractions pf = partial_fractions(k2, m);
  RationalFunction sum;
  const auto roots = detail::pole_roots();
  for (const auto& t : pf.terms) {
    // int (w^2 + c)^{-b} dw = 1/2 B(1/2, b - 1/2) c^{1/2 - b}, c = 1/beta, c^{1/2-b} = sqrt(beta)^{2b-1}
    sum += t.coeff * RationalFunction(detail::beta_half_over_pi(t.power) / 2) * roots[t.pole].pow(2 * t.power - 1);
  }
  return sum;
}

inline ModularFunction eval_closed(const IntegralDescriptor& d) {
  const int vars = d.operand_count() == 2 ? 2 : 1;
  if (d.coeff.is_zero()) return ModularFunction::zero(d.k_prefactor(), vars);
  if (!d.converges()) throw ConvergenceError("divergent descriptor: " + d.to_string());
  if (!d.coeff.is_real() && !d.coeff.is_imaginary()) throw ShapeError("descriptor coefficient must be real or imaginary");
  const Rational c = d.coeff.is_real() ? d.coeff.re : d.coeff.im;
  const int ipow = d.coeff.is_real() ? 0 : 1;
  const Rational v_part = detail::beta_half_integer(d.k1, d.v_exponent());
  RationalFunction value = RationalFunction(2 * c * v_part) * w_integral_over_pi(d.k2, d.m) *
                           RationalFunction::s().pow(d.n[1]) * RationalFunction::t().pow(d.n[2]);
  return {d.k_prefactor(), 1, value, vars, ipow};
}

}  // namespace nct
