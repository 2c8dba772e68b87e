#pragma once

// k^n1 b0^m1 X k^n2 b0^m2 [Y k^n3 b0^m3] xi1^{2 k1} xi2^{2 k2}

#include <array>
#include <string>
#include <vector>

#include "nctorus/core/errors.hpp"
#include "nctorus/symbol/symbol_expr.hpp"

namespace nct {

struct IntegralDescriptor {
  std::array<int, 3> n{0, 0, 0};
  std::array<int, 3> m{0, 0, 0};
  int k1 = 0;
  int k2 = 0;
  std::vector<Letter> operands;
  Gaussian coeff = 1;

  int operand_count() const { return static_cast<int>(operands.size()); }
  int total_b0() const { return m[0] + m[1] + m[2]; }
  /// Exponent of the left k factor: n1 + n2 + n3 - 1 - 2 k2.
  int k_prefactor() const { return n[0] + n[1] + n[2] - 1 - 2 * k2; }
  /// Integer part of the v-integral Beta argument; convergence needs it positive.
  int v_exponent() const { return total_b0() - k1 - k2 - 1; }
  bool converges() const {
    if (v_exponent() <= 0) return false;
    for (int c : m)
      if (c < 0) return false;
    return k1 >= 0 && k2 >= 0 && m[0] + m[1] + m[2] > k2;
  }

  std::string to_string() const {
    std::string s = "n=(" + std::to_string(n[0]) + "," + std::to_string(n[1]) + "," + std::to_string(n[2]) + ") m=(" +
                    std::to_string(m[0]) + "," + std::to_string(m[1]) + "," + std::to_string(m[2]) + ") k1=" +
                    std::to_string(k1) + " k2=" + std::to_string(k2) + " ops=";
    for (std::size_t i = 0; i < operands.size(); ++i) s += std::string(i ? "," : "") + letter_name(operands[i]);
    return s + " coeff=" + nct::to_string(coeff);
  }
};

inline IntegralDescriptor describe(const SymbolWord& w, const Gaussian& coeff = 1) {
  if (!w.is_even()) throw ShapeError("odd xi power; take the even part first");
  if (w.letters.empty() || w.letters.size() > 2)
    throw ShapeError("word must carry one or two derivative letters, found " + std::to_string(w.letters.size()));
  if (w.spin) throw ShapeError("spinor factor must be reduced before integration");
  IntegralDescriptor d;
  for (std::size_t i = 0; i < w.blocks.size(); ++i) {
    d.n[i] = w.blocks[i].k;
    d.m[i] = w.blocks[i].b;
  }
  d.k1 = w.xi[0] / 2;
  d.k2 = w.xi[1] / 2;
  d.operands = w.letters;
  d.coeff = coeff;
  return d;
}

}  // namespace nct
