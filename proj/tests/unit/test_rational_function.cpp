#include <random>

#include <gtest/gtest.h>

#include "nctorus/core/expr_parser.hpp"
#include "nctorus/core/polynomial.hpp"
#include "nctorus/core/rational_function.hpp"
#include "nctorus/rearrangement/modular_function.hpp"

using namespace nct;

namespace {
const RationalFunction s = RationalFunction::s(), t = RationalFunction::t();
}

TEST(RationalFunction, CancelsCommonFactors) {
  EXPECT_EQ((s * s - t * t) / (s + t), s - t);
  EXPECT_EQ((s * s - 1) / (s - 1), s + 1);
  EXPECT_TRUE(((s + t) / (s + t) - 1).is_zero());
}

TEST(RationalFunction, CanonicalFormMakesEqualityStructural) {
  const RationalFunction a = RationalFunction(1) / (s + 1) + RationalFunction(1) / (t + 1);
  const RationalFunction b = (s + t + 2) / ((s + 1) * (t + 1));
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.num(), b.num());
  EXPECT_EQ(a.den(), b.den());
}

TEST(RationalFunction, AgreesWithFloatingPointAtRandomPoints) {
  const RationalFunction f = (2 * s * s + 4 * s * t + 3) / ((t + 1).pow(3) * (s + t)) - s / (s + 1);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.1, 4.0);
  for (int i = 0; i < 50; ++i) {
    const double x = u(rng), y = u(rng);
    const double direct = (2 * x * x + 4 * x * y + 3) / (std::pow(y + 1, 3) * (x + y)) - x / (x + 1);
    EXPECT_NEAR(f.evaluate(x, y), direct, 1e-12 * std::max(1.0, std::abs(direct)));
  }
}

TEST(RationalFunction, SubstitutionAndComposition) {
  const RationalFunction f = (s - t) / (s + t);
  EXPECT_EQ(f.substitute_t(1), (s - 1) / (s + 1));
  EXPECT_EQ(f.substitute_s(1), (1 - t) / (1 + t));
  EXPECT_EQ(f.swap_variables(), -f);
  EXPECT_EQ(f.compose(RationalFunction(1) / s, t), (1 - s * t) / (1 + s * t));
  EXPECT_EQ(f.evaluate(Rational(3), Rational(1)), make_rational(1, 2));
}

TEST(RationalFunction, NegativePowersAndConstants) {
  EXPECT_EQ(s.pow(-2) * s * s, RationalFunction(1));
  EXPECT_EQ(((s + 1) / (s + 1)).constant(), std::optional<Rational>(1));
  EXPECT_FALSE((s / (s + 1)).constant().has_value());
}

TEST(RationalFunction, DivisionByZeroThrows) { EXPECT_ANY_THROW(s / RationalFunction()); }

TEST(Polynomial, GcdOfBivariatePolynomials) {
  const Polynomial a = ((s + t) * (s - 2) * (t + 3)).num();
  const Polynomial b = ((s + t) * (t + 3) * (s + 5)).num();
  EXPECT_EQ(gcd(a, b), make_monic(((s + t) * (t + 3)).num()));
}

TEST(ExprParser, ParsesGoldenNotation) {
  EXPECT_EQ(parse_rational_function("(t+1)^3*(s+1)*(s+t)"), (t + 1).pow(3) * (s + 1) * (s + t));
  EXPECT_EQ(parse_rational_function("2*s^2 + 4*s*t - 1/3"), 2 * s * s + 4 * s * t - RationalFunction(make_rational(1, 3)));
  EXPECT_EQ(parse_rational_function("1 - s"), 1 - s);
  EXPECT_THROW(parse_rational_function("s +* t"), ParseError);
}

TEST(ModularFunction, PrintsWithUnicodeFactors) {
  const ModularFunction h(-3, 1, RationalFunction(make_rational(1, 3)) * (1 - s) / (s * (s + 1).pow(2)), 1);
  EXPECT_EQ(h.to_string(), "(π/3)k⁻³(1−s)/(s(s+1)²)");
}

TEST(ModularFunction, JsonRoundTrip) {
  const ModularFunction f(-2, 1, (t - 1) / ((t + 1).pow(2) * (s + 1)), 2, 1);
  const ModularFunction g = modular_function_from_json(to_json(f));
  EXPECT_EQ(f, g);
  EXPECT_EQ(g.ipow(), 1);
  EXPECT_EQ(g.k_prefactor(), -2);
}

TEST(ModularFunction, ImaginaryUnitPowersReduceToSign) {
  const ModularFunction f(0, 1, s, 1, 2);
  EXPECT_EQ(f.ipow(), 0);
  EXPECT_EQ(f, ModularFunction(0, 1, -s, 1));
}
