#include <random>

#include <gtest/gtest.h>

#include "nctorus/curvature/assemble.hpp"
#include "nctorus/rearrangement/closed_form.hpp"
#include "nctorus/rearrangement/quadrature.hpp"

using namespace nct;

namespace {

IntegralDescriptor descriptor(std::array<int, 3> n, std::array<int, 3> m, int k1, int k2, std::vector<Letter> ops,
                              Gaussian c = 1) {
  IntegralDescriptor d;
  d.n = n;
  d.m = m;
  d.k1 = k1;
  d.k2 = k2;
  d.operands = std::move(ops);
  d.coeff = c;
  return d;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

const RationalFunction s = RationalFunction::s(), t = RationalFunction::t();

}  // namespace

TEST(PartialFractions, RecomposeToTheOriginal) {
  const std::vector<std::pair<int, std::array<int, 3>>> cases = {
      {0, {1, 1, 1}}, {2, {2, 1, 1}}, {1, {3, 0, 2}}, {3, {1, 2, 2}}, {0, {4, 0, 0}}};
  for (const auto& [k2, m] : cases) {
    const PartialFractions pf = partial_fractions(k2, m);
    for (const Rational x : {make_rational(1, 3), make_rational(2), make_rational(7, 5)})
      EXPECT_EQ(pf.recompose_at(x), pf.original_at(x)) << "k2=" << k2;
  }
  EXPECT_THROW(partial_fractions(3, {1, 1, 1}), ConvergenceError);
}

TEST(ClosedForm, FlatDescriptorHasAnElementaryValue) {
  // 2 int dv int du u^{-1/2} (1 + v^2 + u)^{-3} = 2 (3 pi / 8)(2/3) = pi/2
  const ModularFunction f = eval_closed(descriptor({0, 0, 0}, {3, 0, 0}, 0, 0, {Letter::d11}));
  EXPECT_EQ(f.value(), RationalFunction(make_rational(1, 2)));
  EXPECT_EQ(f.pi_power(), 1);
  EXPECT_NEAR(eval_quadrature(descriptor({0, 0, 0}, {3, 0, 0}, 0, 0, {Letter::d11}), 1.0, 1.0), std::numbers::pi / 2, 1e-10);
}

TEST(ClosedForm, DivergentAndZeroDescriptors) {
  EXPECT_THROW(eval_closed(descriptor({0, 0, 0}, {1, 0, 0}, 0, 0, {Letter::d11})), ConvergenceError);
  EXPECT_THROW(eval_quadrature(descriptor({0, 0, 0}, {1, 0, 0}, 0, 0, {Letter::d11}), 1.0, 1.0), ConvergenceError);
  const ModularFunction z = eval_closed(descriptor({1, 0, 0}, {1, 0, 0}, 0, 0, {Letter::d11}, 0));
  EXPECT_TRUE(z.is_zero());
}

TEST(ClosedForm, OneOperandDescriptorAgainstQuadrature) {
  const IntegralDescriptor d = descriptor({1, 1, 0}, {2, 1, 0}, 0, 1, {Letter::d11});
  const ModularFunction f = eval_closed(d);
  EXPECT_EQ(f.variables(), 1);
  for (double x : {2.0, 1.0 / 3.0}) EXPECT_LT(rel(eval_quadrature(d, x, 1.0), f.evaluate(x)), 1e-8) << x;
}

TEST(ClosedForm, SwappingSlotsSwapsVariables) {
  const IntegralDescriptor a = descriptor({1, 2, 0}, {1, 2, 1}, 1, 1, {Letter::d1, Letter::d1});
  const IntegralDescriptor b = descriptor({1, 0, 2}, {1, 1, 2}, 1, 1, {Letter::d1, Letter::d1});
  EXPECT_NEAR(eval_quadrature(a, 2.0, 3.0), eval_quadrature(b, 3.0, 2.0), 1e-9 * std::abs(eval_quadrature(a, 2.0, 3.0)));
  EXPECT_EQ(eval_closed(a).value(), eval_closed(b).value().swap_variables());
}

TEST(ClosedForm, RandomDescriptorsAgainstQuadrature) {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> small(0, 2);
  std::uniform_real_distribution<double> u(0.2, 5.0);
  int checked = 0;
  while (checked < 8) {
    const IntegralDescriptor d = descriptor({small(rng), small(rng), small(rng)}, {1 + small(rng), small(rng), small(rng)},
                                            small(rng), small(rng), {Letter::d1, Letter::d2}, make_rational(-3, 2));
    if (!d.converges()) continue;
    const double x = u(rng), y = u(rng);
    EXPECT_LT(rel(eval_quadrature(d, x, y), eval_closed(d).evaluate(x, y)), 1e-8) << d.to_string();
    ++checked;
  }
}

TEST(ClosedForm, SubstitutionAtOneMatchesQuadratureAtOne) {
  const IntegralDescriptor d = descriptor({1, 1, 0}, {2, 1, 1}, 0, 2, {Letter::d1, Letter::d1}, -2);
  const ModularFunction f = eval_closed(d);
  EXPECT_NEAR(f.substitute_t(1).substitute_s(1).evaluate(1.0), eval_quadrature(d, 1.0, 1.0), 1e-10);
}

TEST(ClosedForm, ResultCarriesOnePowerOfPi) {
  const Parametrix& p = cached_parametrix();
  const SymbolExpr reduced = spinor_reduce(even_part(p.b2), false);
  for (const auto& [w, c] : reduced.terms()) EXPECT_EQ(eval_closed(describe(w, c)).pi_power(), 1);
}

TEST(Substitute, PrintedFunctionValues) {
  const ModularFunction& F22 = printed("F22").f;
  EXPECT_EQ(F22.substitute_t(1).value(), RationalFunction(make_rational(-1, 4)));
  EXPECT_EQ(F22.substitute_t(1).k_prefactor(), -1);
  EXPECT_TRUE(printed("G").f.substitute_s(1).is_zero());
  // F11(1,1) = -(2/3)(24/32) pi k^-3
  EXPECT_EQ(printed("F11").f.rational_at(1, 1), make_rational(-1, 2));
}
