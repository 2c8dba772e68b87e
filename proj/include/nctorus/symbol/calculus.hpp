#pragma once

// Derivations, xi-derivatives and the parametrix of D_k^2 + 1 on symbol words.

#include "nctorus/symbol/symbol_expr.hpp"

namespace nct {

inline Letter differentiate_letter(int mu, Letter l) {
  if (mu != 1 && mu != 2) throw ParameterError("derivation index must be 1 or 2");
  switch (l) {
    case Letter::d1: return mu == 1 ? Letter::d11 : Letter::d12;
    case Letter::d2: return mu == 1 ? Letter::d12 : Letter::d22;
    default: throw UnsupportedOrderError(std::string("third derivative of k requested (delta_") + std::to_string(mu) +
                                         " of " + letter_name(l) + ")");
  }
}

namespace detail {

inline SymbolExpr dk(int mu) { return SymbolExpr::letter(mu == 1 ? Letter::d1 : Letter::d2); }

// delta(k^a)
inline SymbolExpr delta_k_power(int mu, int a) {
  SymbolExpr r;
  if (a > 0) {
    for (int j = 0; j < a; ++j) r += SymbolExpr::k(j) * dk(mu) * SymbolExpr::k(a - 1 - j);
  } else if (a < 0) {
    const int n = -a;
    for (int j = 0; j < n; ++j) r -= SymbolExpr::k(-j - 1) * dk(mu) * SymbolExpr::k(-(n - j));
  }
  return r;
}

// delta(b0) = -b0 delta(k^2) xi2^2 b0
inline SymbolExpr delta_b0(int mu) {
  return -(SymbolExpr::b0() * delta_k_power(mu, 2) * SymbolExpr::xi(0, 2) * SymbolExpr::b0());
}

inline SymbolExpr delta_b0_power(int mu, int c) {
  SymbolExpr r;
  for (int j = 0; j < c; ++j) r += SymbolExpr::b0(j) * delta_b0(mu) * SymbolExpr::b0(c - 1 - j);
  return r;
}

inline SymbolExpr block_expr(const Block& b) {
  SymbolWord w;
  w.blocks[0] = b;
  return w;
}

}  // namespace detail

/// Leibniz rule over every factor of every word.
inline SymbolExpr sym_delta(int mu, const SymbolExpr& p) {
  if (mu != 1 && mu != 2) throw ParameterError("derivation index must be 1 or 2");
  SymbolExpr out;
  for (const auto& [w, c] : p.terms()) {
    SymbolWord scalar_part;
    scalar_part.xi = w.xi;
    scalar_part.spin = w.spin;
    const SymbolExpr tail_scalar = c * SymbolExpr(scalar_part);

    const std::size_t nf = w.blocks.size() + w.letters.size();
    std::vector<SymbolExpr> factors;
    factors.reserve(nf);
    for (std::size_t i = 0; i < w.blocks.size(); ++i) {
      factors.push_back(detail::block_expr(w.blocks[i]));
      if (i < w.letters.size()) factors.push_back(SymbolExpr::letter(w.letters[i]));
    }
    for (std::size_t f = 0; f < nf; ++f) {
      SymbolExpr d;
      if (f % 2 == 0) {
        const Block& b = w.blocks[f / 2];
        d = detail::delta_k_power(mu, b.k) * SymbolExpr::b0(b.b) + SymbolExpr::k(b.k) * detail::delta_b0_power(mu, b.b);
      } else {
        d = SymbolExpr::letter(differentiate_letter(mu, w.letters[f / 2]));
      }
      if (d.is_zero()) continue;
      SymbolExpr term = 1;
      for (std::size_t g = 0; g < nf; ++g) term *= g == f ? d : factors[g];
      out += term * tail_scalar;
    }
  }
  return out;
}

/// d/dxi_i, with d1 b0^c = -2c xi1 b0^{c+1} and d2 b0^c = -2c xi2 k^2 b0^{c+1}.
inline SymbolExpr sym_xi_deriv(int i, const SymbolExpr& p) {
  if (i != 1 && i != 2) throw ParameterError("xi index must be 1 or 2");
  const int ix = i - 1;
  SymbolExpr out;
  for (const auto& [w, c] : p.terms()) {
    if (w.xi[ix] > 0) {
      SymbolWord v = w;
      v.xi[ix] -= 1;
      out.add(v, c * Gaussian(w.xi[ix]));
    }
    for (std::size_t bi = 0; bi < w.blocks.size(); ++bi) {
      const int cc = w.blocks[bi].b;
      if (cc == 0) continue;
      SymbolWord v = w;
      v.blocks[bi].b += 1;
      if (i == 2) v.blocks[bi].k += 2;
      v.xi[ix] += 1;
      out.add(v, c * Gaussian(-2 * cc));
    }
  }
  return out;
}

/// Symbols of D_k^2 graded by order: a2 = xi1^2 + k^2 xi2^2, a1, a0.
struct DiracSymbols {
  SymbolExpr a2;
  SymbolExpr a1;
  SymbolExpr a0;
};

inline DiracSymbols dirac_square_symbols() {
  using S = SymbolExpr;
  const S d1 = S::letter(Letter::d1), d2 = S::letter(Letter::d2);
  DiracSymbols a;
  a.a2 = S::xi(2, 0) + S::k(2) * S::xi(0, 2);
  a.a1 = (Gaussian(make_rational(3, 2)) * (S::k() * d2) + Gaussian(make_rational(1, 2)) * (d2 * S::k()) + S::sigma12() * d1) *
         S::xi(0, 1);
  a.a0 = Gaussian(make_rational(1, 4)) * (d2 * d2) + Gaussian(make_rational(1, 2)) * (S::sigma12() * S::letter(Letter::d12)) +
         Gaussian(make_rational(1, 2)) * (S::k() * S::letter(Letter::d22));
  return a;
}

struct Parametrix {
  SymbolExpr b0;
  SymbolExpr b1;
  SymbolExpr b2;
};

/// b0 = (a2 + 1)^{-1} is the dedicated letter; b1 and b2 follow the usual recursion
/// for a left parametrix.
inline Parametrix parametrix(const SymbolExpr& a2, const SymbolExpr& a1, const SymbolExpr& a0) {
  const SymbolExpr b0 = SymbolExpr::b0();
  auto d1 = [](const SymbolExpr& x) { return sym_xi_deriv(1, x); };
  auto d2 = [](const SymbolExpr& x) { return sym_xi_deriv(2, x); };
  auto de1 = [](const SymbolExpr& x) { return sym_delta(1, x); };
  auto de2 = [](const SymbolExpr& x) { return sym_delta(2, x); };
  const Gaussian half = make_rational(1, 2);

  Parametrix r;
  r.b0 = b0;
  r.b1 = -(b0 * a1 * b0 + d1(b0) * de1(a2) * b0 + d2(b0) * de2(a2) * b0);
  r.b2 = -(b0 * a0 * b0 + r.b1 * a1 * b0 + d1(b0) * de1(a1) * b0 + d2(b0) * de2(a1) * b0 + d1(r.b1) * de1(a2) * b0 +
           d2(r.b1) * de2(a2) * b0 + half * (d1(d1(b0)) * de1(de1(a2)) * b0) + half * (d2(d2(b0)) * de2(de2(a2)) * b0) +
           d1(d2(b0)) * de1(de2(a2)) * b0);
  return r;
}

inline Parametrix parametrix(const DiracSymbols& a) { return parametrix(a.a2, a.a1, a.a0); }

/// Drops every word with an odd power of xi1 or xi2.
inline SymbolExpr even_part(const SymbolExpr& p) {
  return p.filter([](const SymbolWord& w) { return w.is_even(); });
}

/// Plain channel keeps the sigma-free words. Chiral keeps the sigma1 sigma2 words times
/// tr(gamma sigma1 sigma2)/tr(1) = i for gamma = sigma3, and drops the spin factor.
inline SymbolExpr spinor_reduce(const SymbolExpr& p, bool chiral) {
  SymbolExpr out;
  for (const auto& [w, c] : p.terms()) {
    if (w.spin != chiral) continue;
    SymbolWord v = w;
    v.spin = false;
    out.add(v, chiral ? c * Gaussian::i() : c);
  }
  return out;
}

/// p (a2 + 1), using b0 (1 + xi1^2 + k^2 xi2^2) = 1 when the last block carries b0.
inline SymbolExpr times_a2_plus_one_right(const SymbolExpr& p) {
  SymbolExpr out;
  const SymbolExpr a2p1 = SymbolExpr::xi(2, 0) + SymbolExpr::k(2) * SymbolExpr::xi(0, 2) + SymbolExpr(1);
  for (const auto& [w, c] : p.terms()) {
    if (w.blocks.back().b > 0) {
      SymbolWord v = w;
      v.blocks.back().b -= 1;
      out.add(v, c);
    } else {
      out += SymbolExpr(w, c) * a2p1;
    }
  }
  return out;
}

/// (a2 + 1) p, with the same rule on the first block.
inline SymbolExpr times_a2_plus_one_left(const SymbolExpr& p) {
  SymbolExpr out;
  const SymbolExpr a2p1 = SymbolExpr::xi(2, 0) + SymbolExpr::k(2) * SymbolExpr::xi(0, 2) + SymbolExpr(1);
  for (const auto& [w, c] : p.terms()) {
    if (w.blocks.front().b > 0) {
      SymbolWord v = w;
      v.blocks.front().b -= 1;
      out.add(v, c);
    } else {
      out += a2p1 * SymbolExpr(w, c);
    }
  }
  return out;
}

/// Left symbol composition b o (a2 + 1 + a1 + a0) = sum over alpha of
/// (1/alpha!) d_xi^alpha(b) delta^alpha(a), keeping every contribution that can reach
/// order >= -2 when b = b0 + b1 + b2: delta^alpha falls on a2 (|alpha| <= 2) and a1
/// (|alpha| = 1). The omitted pieces are all of order <= -3.
inline SymbolExpr compose_with_dirac_square(const SymbolExpr& b, const DiracSymbols& a) {
  const Gaussian half = make_rational(1, 2);
  SymbolExpr out = times_a2_plus_one_right(b) + b * (a.a1 + a.a0);
  auto d = [](int i, const SymbolExpr& x) { return sym_xi_deriv(i, x); };
  auto de = [](int i, const SymbolExpr& x) { return sym_delta(i, x); };
  const SymbolExpr a21 = a.a2 + a.a1;
  out += d(1, b) * de(1, a21) + d(2, b) * de(2, a21);
  out += half * (d(1, d(1, b)) * de(1, de(1, a.a2))) + half * (d(2, d(2, b)) * de(2, de(2, a.a2))) +
         d(1, d(2, b)) * de(1, de(2, a.a2));
  return out;
}

}  // namespace nct
