#include <random>

#include <gtest/gtest.h>

#include "nctorus/torus/gns.hpp"
#include "nctorus/torus/random.hpp"

using namespace nct;

namespace {

const Theta kTheta(make_rational(1, 5));

TorusElement sample(std::mt19937_64& rng, int degree = 2) {
  std::normal_distribution<double> g;
  TorusElement x(kTheta);
  for (int m = -degree; m <= degree; ++m)
    for (int n = -degree; n <= degree; ++n) x += TorusElement::monomial(kTheta, m, n, Complex(g(rng), g(rng)));
  return x;
}

double distance(const TorusElement& a, const TorusElement& b) {
  double worst = 0.0;
  const TorusElement d = a - b;
  for (const auto& [k, c] : d.coeffs()) worst = std::max(worst, std::abs(c));
  return worst;
}

}  // namespace

TEST(Torus, CommutationRelation) {
  const TorusElement u1 = TorusElement::u1(kTheta), u2 = TorusElement::u2(kTheta);
  const TorusElement lhs = u1 * u2, rhs = kTheta.q_pow(1) * (u2 * u1);
  EXPECT_LT(distance(lhs, rhs), 1e-15);
}

TEST(Torus, ExactProductPhase) {
  const ExactTorusElement a = ExactTorusElement::monomial(kTheta, 2, 3), b = ExactTorusElement::monomial(kTheta, -1, 4);
  const ExactTorusElement ab = a * b;
  ASSERT_EQ(ab.coeffs().size(), 1u);
  EXPECT_EQ(ab.coeff(1, 7), ExactCoeff::q_pow(3));  // q^{-bc} with b = 3, c = -1
}

TEST(Torus, StarIsAntimultiplicativeAndTraceIsTracial) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 5; ++i) {
    const TorusElement x = sample(rng), y = sample(rng);
    EXPECT_LT(distance((x * y).star(), y.star() * x.star()), 1e-12);
    EXPECT_LT(std::abs((x * y).trace() - (y * x).trace()), 1e-12);
    EXPECT_GE((x.star() * x).trace().real(), 0.0);
  }
}

TEST(Torus, DerivationsSatisfyLeibnizAndKillTrace) {
  std::mt19937_64 rng(12);
  const TorusElement x = sample(rng), y = sample(rng);
  for (int mu : {1, 2}) {
    const TorusElement lhs = delta(mu, x * y), rhs = delta(mu, x) * y + x * delta(mu, y);
    EXPECT_LT(distance(lhs, rhs), 1e-10);
    EXPECT_LT(std::abs(delta(mu, x).trace()), 1e-14);
  }
  EXPECT_LT(distance(delta(1, TorusElement::u1(kTheta)), Complex(0, 2 * std::numbers::pi) * TorusElement::u1(kTheta)), 1e-14);
}

TEST(Torus, DerivationsAreExactInTheFormalRing) {
  const ExactTorusElement u = ExactTorusElement::monomial(kTheta, 3, -2);
  EXPECT_EQ(delta(1, u).coeff(3, -2), ExactCoeff::monomial(0, 1, Gaussian(0, 3)));
  EXPECT_EQ(delta(2, delta(1, u)).coeff(3, -2), ExactCoeff::monomial(0, 2, Gaussian(6)));
}

TEST(Gns, RightMultiplicationMatchesProduct) {
  const GnsBasis basis(4);
  std::mt19937_64 rng(13);
  const TorusElement x = sample(rng, 1);
  const MatrixC R = gns_right(x, basis).mat, L = gns_left(x, basis).mat;
  for (int m = -2; m <= 2; ++m)
    for (int n = -2; n <= 2; ++n) {
      const TorusElement e = TorusElement::monomial(kTheta, m, n);
      const TorusElement right = e * x, left = x * e;
      const int col = basis.index(m, n);
      for (const auto& [k, c] : right.coeffs()) EXPECT_LT(std::abs(R(basis.index(k.first, k.second), col) - c), 1e-14);
      for (const auto& [k, c] : left.coeffs()) EXPECT_LT(std::abs(L(basis.index(k.first, k.second), col) - c), 1e-14);
    }
}

TEST(Gns, GnsRightOfU1ShiftsWithPhase) {
  const GnsBasis basis(2);
  const MatrixC R = gns_right(TorusElement::u1(kTheta), basis).mat;
  EXPECT_LT(std::abs(R(basis.index(1, 1), basis.index(0, 1)) - kTheta.q_pow(-1)), 1e-15);
  EXPECT_EQ(R(basis.index(0, 1), basis.index(2, 1)), Complex(0.0));  // leaves the box
}

TEST(Gns, LeftAndRightActionsCommuteAwayFromTheCutoff) {
  const GnsBasis basis(6);
  std::mt19937_64 rng(14);
  const MatrixC L = gns_left(sample(rng, 1), basis).mat, R = gns_right(sample(rng, 1), basis).mat;
  const MatrixC C = L * R - R * L;
  for (int i = 0; i < basis.size(); ++i)
    if (basis.depth(i) >= 3) EXPECT_LT(C.col(i).norm(), 1e-12);
}

TEST(Gns, BasisIndexing) {
  const GnsBasis basis(3);
  EXPECT_EQ(basis.size(), 49);
  EXPECT_EQ(basis.index(-3, -3), 0);
  EXPECT_EQ(basis.mode(basis.index(2, -1)), std::make_pair(2, -1));
  EXPECT_EQ(basis.depth(basis.index(0, 0)), 3);
  EXPECT_THROW(GnsBasis(-1), ParameterError);
}

TEST(PositiveK, ProfileAndPositivityChecks) {
  const GnsBasis basis(6);
  const PositiveK k = make_positive_k(u1_profile(kTheta, 0.2), 1.0, 0.1, basis);
  EXPECT_GT(k.spectral_floor, 0.55);
  EXPECT_THROW(make_positive_k(u1_profile(kTheta, 0.6), 1.0, 0.1, basis), PositivityError);
  EXPECT_THROW(make_positive_k(TorusElement::u1(kTheta), 1.0, 0.1, basis), ParameterError);
  std::mt19937_64 rng(15);
  const TorusElement r = random_positive_k(kTheta, rng);
  EXPECT_LT(self_adjoint_defect(r), 1e-15);
  EXPECT_GT(hermitian_eigenvalues(gns_right_sparse(r, basis)).front(), 0.0);
}

TEST(Torus, JsonRoundTrip) {
  std::mt19937_64 rng(16);
  const TorusElement x = sample(rng, 1);
  const TorusElement y = torus_element_from_json(to_json(x));
  EXPECT_EQ(y.theta().to_string(), "1/5");
  EXPECT_LT(distance(x, y), 1e-15);
}
