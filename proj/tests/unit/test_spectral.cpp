#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "nctorus/curvature/assemble.hpp"
#include "nctorus/spectral/curvature_trace.hpp"
#include "nctorus/spectral/heat.hpp"
#include "nctorus/spectral/modular_apply.hpp"
#include "nctorus/torus/random.hpp"

using namespace nct;

namespace {

const Theta kTheta(make_rational(1, 5));

std::vector<double> analytic_spectrum(int N, double c) {
  std::vector<double> ev;
  for (int m = -N; m <= N; ++m)
    for (int n = -N; n <= N; ++n) {
      const double l = 2.0 * std::numbers::pi * std::sqrt(m * m + c * c * n * n);
      ev.push_back(l);
      ev.push_back(-l);
    }
  std::sort(ev.begin(), ev.end());
  return ev;
}

}  // namespace

TEST(Dirac, FlatSpectrum) {
  const GnsBasis basis(3);
  const SpectralData s = diagonalize(build_dirac(TorusElement::one(kTheta), basis));
  const auto expected = analytic_spectrum(3, 1.0);
  ASSERT_EQ(s.eigenvalues.size(), expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) EXPECT_NEAR(s.eigenvalues[i], expected[i], 1e-10);
}

TEST(Dirac, ConstantKSpectrum) {
  const GnsBasis basis(4);
  const SpectralData s = diagonalize(build_dirac(TorusElement::scalar(kTheta, Complex(1.7)), basis));
  const auto expected = analytic_spectrum(4, 1.7);
  for (std::size_t i = 0; i < expected.size(); ++i) EXPECT_NEAR(s.eigenvalues[i], expected[i], 1e-10);
}

TEST(Dirac, HermitianAndSymmetricForGenericK) {
  std::mt19937_64 rng(51);
  const GnsBasis basis(5);
  const DiracMatrix D = build_dirac(random_positive_k(kTheta, rng), basis);
  EXPECT_LE(D.hermiticity_defect, 1e-12);
  EXPECT_LE(spectral_asymmetry(diagonalize(D).eigenvalues), 1e-8);
}

TEST(Dirac, RejectsNonPositiveK) {
  const GnsBasis basis(3);
  EXPECT_THROW(build_dirac(TorusElement::scalar(kTheta, Complex(-0.5)), basis), PositivityError);
  EXPECT_THROW(build_dirac(TorusElement::u1(kTheta), basis), ParameterError);
}

TEST(Heat, SyntheticSpectrumIsRecovered) {
  // h(t) = c_{-1}/t + c0 + c1 t sampled exactly
  const double cm1 = 0.159, c0 = -0.37, c1 = 2.5;
  const auto t = log_grid(1e-3, 1e-2, 40);
  std::vector<double> h;
  for (double x : t) h.push_back(cm1 / x + c0 + c1 * x);
  const SpectralFit f = fit_samples(t, h);
  EXPECT_NEAR(f.c_minus1, cm1, 1e-6);
  EXPECT_NEAR(f.c0, c0, 1e-6);
  EXPECT_NEAR(f.c1, c1, 1e-6);
  EXPECT_LT(f.residual, 1e-8);
}

TEST(Heat, FlatControl) {
  const GnsBasis basis(12);
  const DiracMatrix D = build_dirac(TorusElement::one(kTheta), basis);
  const SpectralFit f = heat_fit(D);
  EXPECT_NEAR(f.c_minus1 * 2.0 * std::numbers::pi, 1.0, 0.01);
  EXPECT_LT(std::abs(f.c0), 5e-3);
  EXPECT_EQ(f.dim_ker, 2);
  EXPECT_NEAR(zeta_at_zero(f).value, -2.0, 5e-3);
  HeatOptions chiral;
  chiral.weight.chiral = true;
  const SpectralData s = diagonalize(D, chiral.weight);
  for (double x : {1e-3, 1e-2, 0.1}) EXPECT_NEAR(heat_trace(s, x), 0.0, 1e-10);
}

TEST(Heat, WindowValidation) { EXPECT_THROW(log_grid(0.1, 0.01, 10), ParameterError); }

TEST(Heat, JsonFields) {
  const auto t = log_grid(1e-3, 1e-2, 10);
  std::vector<double> h;
  for (double x : t) h.push_back(1.0 / x);
  const auto j = to_json(fit_samples(t, h));
  for (const char* key : {"c_minus1", "c0", "c1", "residual", "window", "dim_ker"}) EXPECT_TRUE(j.contains(key)) << key;
}

TEST(ModularApply, ConstantFunctionGivesProduct) {
  std::mt19937_64 rng(52);
  const MatrixC K = random_positive_matrix(6, rng), X = random_matrix(6, rng), Y = random_matrix(6, rng);
  const ModularFunction one(0, 0, RationalFunction(1), 2);
  EXPECT_LT(relative_norm(apply_modular(one, X, Y, K) - X * Y, X * Y), 1e-12);
}

TEST(ModularApply, FirstVariableIsTheModularOperator) {
  std::mt19937_64 rng(53);
  const MatrixC K = random_positive_matrix(6, rng), X = random_matrix(6, rng);
  const ModularFunction f(0, 0, RationalFunction::s(), 1);
  EXPECT_LT(relative_norm(apply_modular(f, X, K) - K.inverse() * X * K, X), 1e-12);
}

TEST(ModularApply, PolynomialAgreesWithDirectEvaluation) {
  std::mt19937_64 rng(54);
  for (int i = 0; i < 10; ++i) {
    const MatrixC K = random_positive_matrix(8, rng), X = random_matrix(8, rng), Y = random_matrix(8, rng);
    const Polynomial F = random_polynomial(4, rng);
    const ModularFunction f(0, 0, RationalFunction(F), 2);
    const MatrixC direct = apply_polynomial_direct(F, X, Y, K);
    EXPECT_LT(relative_norm(apply_modular(f, X, Y, K) - direct, direct), 1e-12);
  }
}

TEST(ModularApply, TraceIdentity) {
  std::mt19937_64 rng(55);
  for (int i = 0; i < 20; ++i) {
    const MatrixC K = random_positive_matrix(8, rng), X = random_matrix(8, rng), Y = random_matrix(8, rng);
    EXPECT_LT(lemma_trial(random_polynomial(4, rng), K, X, Y).error(), 1e-10);
  }
}

TEST(ModularApply, TraceShortcutMatchesFullAction) {
  std::mt19937_64 rng(56);
  const MatrixC K = random_positive_matrix(7, rng), X = random_matrix(7, rng), Y = random_matrix(7, rng);
  const ModularFunction& f = printed("F11").f;
  const ModularEigen ke = modular_eigen(K);
  EXPECT_LT(std::abs(modular_trace(f, X, &Y, ke) - apply_modular(f, X, &Y, ke).trace()), 1e-10);
}

TEST(ModularApply, RejectsNonPositiveK) {
  const MatrixC K = -MatrixC::Identity(3, 3);
  EXPECT_THROW(modular_eigen(K), PositivityError);
}

TEST(CurvatureTrace, SingleEntryAtFlatKVanishes) {
  CurvaturePackage p;
  p.set(OperandTag::d11, printed("F1").f);
  const CurvatureTrace r = numeric_curvature_trace(p, TorusElement::one(kTheta), GnsBasis(4));
  EXPECT_EQ(std::abs(r.total), 0.0);
}

TEST(CurvatureTrace, AssembledPackagesVanishOnASmallModel) {
  std::mt19937_64 rng(57);
  const GnsBasis basis(5);
  const TorusElement k = random_positive_k(kTheta, rng);
  const CurvatureTrace r = numeric_curvature_trace(assemble(Channel::plain).package, k, basis);
  EXPECT_GT(r.largest, 1e-3);
  EXPECT_LT(r.relative(), 1e-8);
  const CurvatureTrace c = numeric_curvature_trace(assemble(Channel::chiral).package, k, basis);
  EXPECT_LT(std::abs(c.total), 1e-8 * std::max(1.0, c.largest));
}

TEST(CurvatureTrace, PerturbedPackageDoesNotVanish) {
  std::mt19937_64 rng(58);
  const GnsBasis basis(5);
  CurvaturePackage p = assemble(Channel::plain).package;
  p.at(OperandTag::d11) = p.at(OperandTag::d11).scaled(2);
  EXPECT_GT(numeric_curvature_trace(p, random_positive_k(kTheta, rng), basis).relative(), 1e-3);
}

TEST(Heat, RightWeightMatchesCurvaturePairing) {
  // measured constant: c0(f) = -tau(f R) / (2 pi^2) with f on the side of k
  const GnsBasis basis(24);
  const TorusElement k = make_positive_k(u1_profile(kTheta, 0.2), 1.0, 0.1, basis).k;
  const TorusElement u = TorusElement::u1(kTheta);
  HeatOptions opt;
  opt.weight.f = u + u.star();
  opt.weight.right = true;
  const SpectralFit fit = heat_fit(build_dirac(k, basis), opt);
  const double tau = curvature_pairing(assemble(Channel::plain).package, k, *opt.weight.f, GnsBasis(10)).real();
  EXPECT_NEAR(2.0 * std::numbers::pi * std::numbers::pi * fit.c0 / tau, -1.0, 1e-3);
}
