#pragma once

// F(D1, D1 D2)(X Y) for D(a) = k^-1 a k, evaluated in the eigenbasis of k:
//   result_il = mu_i^p sum_j F(mu_j/mu_i, mu_l/mu_i) X_ij Y_jl,
// p the left k-power of F.

#include <complex>
#include <numbers>
#include <random>

#include "nctorus/core/errors.hpp"
#include "nctorus/core/linalg.hpp"
#include "nctorus/rearrangement/modular_function.hpp"

namespace nct {

struct ModularEigen {
  Eigen::VectorXd mu;
  MatrixC V;  // K = V diag(mu) V*
};

inline ModularEigen modular_eigen(const MatrixC& K) {
  Eigen::SelfAdjointEigenSolver<MatrixC> es(K);
  const double lo = es.eigenvalues().minCoeff();
  if (!(lo > 0.0)) throw PositivityError("k must be positive definite", lo);
  return {es.eigenvalues(), es.eigenvectors()};
}

namespace detail {

/// pi^p * num/den with double coefficients, for inner loops.
class FastModular {
 public:
  explicit FastModular(const ModularFunction& f) : scale_(std::pow(std::numbers::pi, f.pi_power())) {
    load(f.value().num(), num_);
    load(f.value().den(), den_);
  }
  double operator()(double s, double t = 1.0) const { return scale_ * eval(num_, s, t) / eval(den_, s, t); }

 private:
  using Dense = std::vector<std::vector<double>>;
  static void load(const Polynomial& p, Dense& d) {
    d.assign(p.degree_s() + 1, std::vector<double>(p.degree_t() + 1, 0.0));
    for (const auto& [e, c] : p.terms()) d[e.first][e.second] = c.get_d();
  }
  static double eval(const Dense& d, double s, double t) {
    double acc = 0.0;
    for (auto row = d.rbegin(); row != d.rend(); ++row) {
      double r = 0.0;
      for (auto c = row->rbegin(); c != row->rend(); ++c) r = r * t + *c;
      acc = acc * s + r;
    }
    return acc;
  }
  double scale_;
  Dense num_, den_;
};

inline std::complex<double> modular_scalar(const ModularFunction& F) {
  return F.ipow() ? std::complex<double>(0.0, 1.0) : std::complex<double>(1.0, 0.0);
}

}  // namespace detail

/// Two operands (Y non-null) or one operand.
inline MatrixC apply_modular(const ModularFunction& F, const MatrixC& X, const MatrixC* Y, const ModularEigen& ke) {
  const auto n = ke.mu.size();
  const MatrixC Xt = ke.V.adjoint() * X * ke.V;
  const std::complex<double> c = detail::modular_scalar(F);
  const detail::FastModular f(F);
  const int p = F.k_prefactor();
  MatrixC R = MatrixC::Zero(n, n);
  if (!Y) {
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) R(i, j) = std::pow(ke.mu(i), p) * f(ke.mu(j) / ke.mu(i)) * Xt(i, j);
  } else {
    const MatrixC Yt = ke.V.adjoint() * *Y * ke.V;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double scale = std::pow(ke.mu(i), p);
      for (Eigen::Index l = 0; l < n; ++l) {
        std::complex<double> acc = 0.0;
        for (Eigen::Index j = 0; j < n; ++j) acc += f(ke.mu(j) / ke.mu(i), ke.mu(l) / ke.mu(i)) * Xt(i, j) * Yt(j, l);
        R(i, l) = scale * acc;
      }
    }
  }
  return c * ke.V * R * ke.V.adjoint();
}

inline MatrixC apply_modular(const ModularFunction& F, const MatrixC& X, const MatrixC& K) {
  return apply_modular(F, X, nullptr, modular_eigen(K));
}
inline MatrixC apply_modular(const ModularFunction& F, const MatrixC& X, const MatrixC& Y, const MatrixC& K) {
  return apply_modular(F, X, &Y, modular_eigen(K));
}

/// Unnormalized trace of apply_modular, using only its diagonal:
/// sum_ij mu_i^p F(mu_j/mu_i, 1) X_ij Y_ji (two operands) or sum_i mu_i^p F(1) X_ii.
inline std::complex<double> modular_trace(const ModularFunction& F, const MatrixC& X, const MatrixC* Y, const ModularEigen& ke) {
  const auto n = ke.mu.size();
  const MatrixC Xt = ke.V.adjoint() * X * ke.V;
  const detail::FastModular f(F);
  const int p = F.k_prefactor();
  std::complex<double> acc = 0.0;
  if (!Y) {
    const double f1 = f(1.0);
    for (Eigen::Index i = 0; i < n; ++i) acc += std::pow(ke.mu(i), p) * f1 * Xt(i, i);
  } else {
    const MatrixC Yt = ke.V.adjoint() * *Y * ke.V;
    for (Eigen::Index i = 0; i < n; ++i) {
      std::complex<double> row = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) row += f(ke.mu(j) / ke.mu(i), 1.0) * Xt(i, j) * Yt(j, i);
      acc += std::pow(ke.mu(i), p) * row;
    }
  }
  return detail::modular_scalar(F) * acc;
}

/// Polynomial F(s,t) = sum f_ab s^a t^b applied as sum f_ab D^{a+b}(X) D^b(Y), with D^c(X) = K^-c X K^c.
inline MatrixC apply_polynomial_direct(const Polynomial& F, const MatrixC& X, const MatrixC& Y, const MatrixC& K) {
  const MatrixC Ki = K.inverse();
  auto Dpow = [&](const MatrixC& A, int c) {
    MatrixC L = MatrixC::Identity(K.rows(), K.cols()), Rm = L;
    for (int i = 0; i < c; ++i) {
      L = L * Ki;
      Rm = Rm * K;
    }
    return MatrixC(L * A * Rm);
  };
  MatrixC out = MatrixC::Zero(X.rows(), Y.cols());
  for (const auto& [e, c] : F.terms()) out += c.get_d() * Dpow(X, e.first + e.second) * Dpow(Y, e.second);
  return out;
}

/// Random Hermitian positive definite matrix with spectrum in [lo, hi].
inline MatrixC random_positive_matrix(int n, std::mt19937_64& rng, double lo = 0.5, double hi = 2.0) {
  std::normal_distribution<double> g;
  MatrixC A(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A(i, j) = {g(rng), g(rng)};
  Eigen::HouseholderQR<MatrixC> qr(A);
  const MatrixC Q = qr.householderQ();
  std::uniform_real_distribution<double> u(lo, hi);
  Eigen::VectorXd d(n);
  for (int i = 0; i < n; ++i) d(i) = u(rng);
  return Q * d.cast<std::complex<double>>().asDiagonal() * Q.adjoint();
}

inline MatrixC random_matrix(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  MatrixC A(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A(i, j) = {g(rng), g(rng)};
  return A;
}

/// Random polynomial in s, t of total degree <= deg with integer-ish rational coefficients.
inline Polynomial random_polynomial(int deg, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> c(-5, 5);
  Polynomial p;
  for (int a = 0; a <= deg; ++a)
    for (int b = 0; a + b <= deg; ++b) p += Polynomial::monomial(a, b, make_rational(c(rng), 1 + (c(rng) + 5) % 3));
  return p;
}

struct LemmaTrial {
  /// tr(F(D1, D1 D2)(X Y)) from the full two-operand action
  std::complex<double> lhs;
  /// tr(F(D, 1)(X) Y)
  std::complex<double> rhs;
  /// tr of the explicit polynomial route
  std::complex<double> direct;
  double error() const {
    const double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
    return std::max(std::abs(lhs - rhs), std::abs(lhs - direct)) / scale;
  }
};

inline LemmaTrial lemma_trial(const Polynomial& F, const MatrixC& K, const MatrixC& X, const MatrixC& Y) {
  const ModularEigen ke = modular_eigen(K);
  const ModularFunction f2(0, 0, RationalFunction(F), 2);
  const ModularFunction f1(0, 0, RationalFunction(F).substitute_t(1), 1);
  LemmaTrial r;
  r.lhs = apply_modular(f2, X, &Y, ke).trace();
  r.rhs = (apply_modular(f1, X, nullptr, ke) * Y).trace();
  r.direct = apply_polynomial_direct(F, X, Y, K).trace();
  return r;
}

}  // namespace nct
