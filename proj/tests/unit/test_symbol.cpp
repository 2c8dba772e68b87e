#include <fstream>
#include <random>

#include <gtest/gtest.h>

#include "nctorus/curvature/assemble.hpp"
#include "nctorus/rearrangement/descriptor.hpp"
#include "nctorus/symbol/calculus.hpp"
#include "nctorus/symbol/classical.hpp"

using namespace nct;

namespace {

const SymbolExpr k = SymbolExpr::k(), b0 = SymbolExpr::b0();
const SymbolExpr d1 = SymbolExpr::letter(Letter::d1), d2 = SymbolExpr::letter(Letter::d2);

SymbolExpr golden(const std::string& name) {
  std::ifstream in(data_dir() + "/golden/" + name);
  return parse_symbol_lines(in);
}

SymbolExpr random_word(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(0, 5), small(-2, 2);
  SymbolExpr w = SymbolExpr::k(small(rng)) * SymbolExpr::b0(std::abs(small(rng)));
  const int letters = pick(rng) % 3;
  for (int i = 0; i < letters; ++i) w *= SymbolExpr::letter(static_cast<Letter>(pick(rng) % 5)) * SymbolExpr::k(small(rng));
  if (pick(rng) % 2) w *= SymbolExpr::sigma12();
  return w * SymbolExpr::xi(pick(rng) % 3, pick(rng) % 3);
}

}  // namespace

TEST(SymbolWord, BlocksMergeAcrossProducts) {
  EXPECT_EQ((k * b0) * (b0 * d1), parse_symbol_expr("k b_0^2 \\delta_1(k)"));
  EXPECT_EQ(SymbolExpr(1) * (k * d1), k * d1);
  EXPECT_EQ(SymbolExpr::sigma12() * SymbolExpr::sigma12(), SymbolExpr(-1));
}

TEST(SymbolWord, ProductIsAssociative) {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 200; ++i) {
    const SymbolExpr p = random_word(rng), q = random_word(rng), r = random_word(rng);
    EXPECT_EQ((p * q) * r, p * (q * r));
  }
}

TEST(SymbolWord, TextRoundTrip) {
  std::mt19937_64 rng(22);
  for (int i = 0; i < 50; ++i) {
    const SymbolExpr p = Gaussian(make_rational(-3, 7)) * random_word(rng) + random_word(rng);
    EXPECT_EQ(parse_symbol_expr(to_latex(p)), p) << to_latex(p);
    EXPECT_EQ(symbol_expr_from_json(to_json(p)), p);
  }
}

TEST(Calculus, DerivativesOfKAndB0) {
  EXPECT_EQ(sym_delta(1, SymbolExpr::k(2)), d1 * k + k * d1);
  EXPECT_EQ(sym_xi_deriv(1, b0), Gaussian(-2) * (SymbolExpr::xi(1, 0) * SymbolExpr::b0(2)));
  EXPECT_EQ(sym_delta(2, b0), -(b0 * (d2 * k + k * d2) * SymbolExpr::xi(0, 2) * b0));
  EXPECT_EQ(sym_xi_deriv(2, b0), Gaussian(-2) * (SymbolExpr::xi(0, 1) * b0 * SymbolExpr::k(2) * b0));
}

TEST(Calculus, DerivativeOfInverseRelationVanishes) {
  // (a2 + 1) b0 = 1, so delta((a2 + 1) b0) = delta(a2) b0 + (a2 + 1) delta(b0) = 0
  const DiracSymbols a = dirac_square_symbols();
  EXPECT_EQ(times_a2_plus_one_left(b0), SymbolExpr(1));
  for (int mu : {1, 2}) EXPECT_TRUE((sym_delta(mu, a.a2) * b0 + times_a2_plus_one_left(sym_delta(mu, b0))).is_zero());
  for (int i : {1, 2}) EXPECT_TRUE((sym_xi_deriv(i, a.a2) * b0 + times_a2_plus_one_left(sym_xi_deriv(i, b0))).is_zero());
}

TEST(Calculus, ThirdDerivativeIsRejected) {
  EXPECT_THROW(sym_delta(1, SymbolExpr::letter(Letter::d12)), UnsupportedOrderError);
}

TEST(DiracSquare, PrincipalSymbolAndClassicalFirstOrderPart) {
  const DiracSymbols a = dirac_square_symbols();
  EXPECT_EQ(a.a2, SymbolExpr::xi(2, 0) + SymbolExpr::k(2) * SymbolExpr::xi(0, 2));
  for (const auto* p : {&a.a1, &a.a0})
    for (const auto& [w, c] : p->terms()) EXPECT_FALSE(w.letters.empty());  // vanishes at k = 1
  ClassicalMonomial m1, m2;
  m1.kpow = 1;
  m1.letters[static_cast<int>(Letter::d2)] = 1;
  m1.xi = {0, 1};
  m2.letters[static_cast<int>(Letter::d1)] = 1;
  m2.xi = {0, 1};
  m2.spin = true;
  ClassicalExpr expected(m1, Gaussian(2));
  expected.add(m2, Gaussian(1));
  EXPECT_EQ(collapse(a.a1), expected);
}

TEST(Parametrix, SizesAndFlatLimit) {
  const Parametrix& p = cached_parametrix();
  EXPECT_EQ(p.b0, b0);
  EXPECT_EQ(p.b2.size(), 101u);
  EXPECT_EQ(even_part(p.b2).size(), 59u);
  for (const auto* q : {&p.b1, &p.b2})
    for (const auto& [w, c] : q->terms()) EXPECT_FALSE(w.letters.empty());
}

TEST(Parametrix, InvertsTheSymbolUpToOrderMinusThree) {
  const Parametrix& p = cached_parametrix();
  const SymbolExpr product = compose_with_dirac_square(p.b0 + p.b1 + p.b2, dirac_square_symbols());
  const SymbolExpr low = product.filter([](const SymbolWord& w) { return w.order() > -3; });
  EXPECT_EQ(low, SymbolExpr(1));
}

TEST(Parametrix, EvenPartMatchesGoldenLists) {
  EXPECT_EQ(reduced_b2(Channel::plain), golden("b2_even_plain.txt"));
  EXPECT_EQ(reduced_b2(Channel::chiral), golden("b2_even_chiral.txt"));
}

TEST(Parametrix, ClassicalCollapseMatchesGolden) {
  EXPECT_EQ(collapse(reduced_b2(Channel::plain)), collapse(golden("b2_classical_plain.txt")));
  EXPECT_EQ(collapse(reduced_b2(Channel::chiral)), collapse(golden("b2_classical_chiral.txt")));
}

TEST(SpinorReduce, TraceRules) {
  const SymbolExpr w = k * d1 * SymbolExpr::xi(0, 2);
  EXPECT_TRUE(spinor_reduce(SymbolExpr::sigma12() * w, false).is_zero());
  EXPECT_TRUE(spinor_reduce(SymbolExpr(1), true).is_zero());
  EXPECT_EQ(spinor_reduce(SymbolExpr::sigma12() * w, true), Gaussian::i() * w);
  EXPECT_TRUE(even_part(SymbolExpr::xi(1, 2) * w).is_zero());
}

TEST(Descriptor, FirstWordsOfTheGoldenLists) {
  const SymbolExpr a = parse_symbol_expr("- 2 k b_0^2 \\delta_1(k) k b_0 \\delta_1(k) b_0 \\xi_2^4");
  const auto& [w, c] = *a.terms().begin();
  const IntegralDescriptor d = describe(w, c);
  EXPECT_EQ(d.n, (std::array<int, 3>{1, 1, 0}));
  EXPECT_EQ(d.m, (std::array<int, 3>{2, 1, 1}));
  EXPECT_EQ(d.k1, 0);
  EXPECT_EQ(d.k2, 2);
  EXPECT_EQ(d.k_prefactor(), -3);

  const SymbolExpr c1 = parse_symbol_expr("k b_0^2 \\delta_{11}(k) b_0 \\xi_2^2");
  const IntegralDescriptor e = describe(c1.terms().begin()->first);
  EXPECT_EQ(e.operand_count(), 1);
  EXPECT_EQ(e.k_prefactor(), -2);

  EXPECT_THROW(describe((SymbolExpr::xi(1, 0) * d1).terms().begin()->first), ShapeError);
}

TEST(Classical, XiIntegralOfB2) {
  const ClassicalExpr i = integrate_xi(collapse(reduced_b2(Channel::plain)));
  const ClassicalExpr expected = classical_term(make_rational(-1, 3), -3, {Letter::d1, Letter::d1}) +
                                 classical_term(make_rational(1, 6), -2, {Letter::d11});
  EXPECT_EQ(i, expected);
  EXPECT_TRUE(integrate_xi(collapse(reduced_b2(Channel::chiral))).is_zero());
}

TEST(Classical, XiIntegralOracle) {
  // int xi1^2 b0^3 d^2 xi at k = 1 is pi/4 in polar coordinates
  auto [r, kp] = classical_xi_integral(1, 0, 3);
  EXPECT_EQ(r, make_rational(1, 4));
  EXPECT_EQ(kp, -1);
  EXPECT_THROW(classical_xi_integral(1, 0, 2), ConvergenceError);
}
