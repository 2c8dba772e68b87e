#pragma once

// Truncated GNS representation on span{e_mn : |m|,|n| <= N}, e_mn = U1^m U2^n.
// Left and right multiplication drop every image vector that leaves the box.

#include <fstream>
#include <iomanip>
#include <string>

#include "nctorus/core/errors.hpp"
#include "nctorus/core/linalg.hpp"
#include "nctorus/torus/torus_element.hpp"

namespace nct {

class GnsBasis {
 public:
  explicit GnsBasis(int cutoff) : n_(cutoff) {
    if (cutoff < 0) throw ParameterError("GNS cutoff must be nonnegative");
  }
  int cutoff() const { return n_; }
  int side() const { return 2 * n_ + 1; }
  int size() const { return side() * side(); }
  int spinor_size() const { return 2 * size(); }

  bool contains(int m, int n) const { return std::abs(m) <= n_ && std::abs(n) <= n_; }
  int index(int m, int n) const { return (m + n_) * side() + (n + n_); }
  std::pair<int, int> mode(int idx) const { return {idx / side() - n_, idx % side() - n_}; }

  /// Distance of e_mn from the cutoff boundary: N - max(|m|,|n|).
  int depth(int idx) const {
    auto [m, n] = mode(idx);
    return n_ - std::max(std::abs(m), std::abs(n));
  }

 private:
  int n_;
};

struct OperatorMatrix {
  MatrixC mat;
  bool hermitian = false;
};

namespace detail {

template <class Phase>
SparseC build_shift_operator(const TorusElement& x, const GnsBasis& basis, Phase phase) {
  std::vector<Eigen::Triplet<Complex>> trip;
  const int N = basis.cutoff();
  for (int m = -N; m <= N; ++m)
    for (int n = -N; n <= N; ++n)
      for (const auto& [k, a] : x.coeffs()) {
        const int mm = m + k.first, nn = n + k.second;
        if (!basis.contains(mm, nn)) continue;
        trip.emplace_back(basis.index(mm, nn), basis.index(m, n), a * phase(m, n, k.first, k.second));
      }
  SparseC s(basis.size(), basis.size());
  s.setFromTriplets(trip.begin(), trip.end());
  return s;
}

}  // namespace detail

/// x . e_mn, using U1^p U2^q U1^m U2^n = q^{-qm} U1^{p+m} U2^{q+n}.
inline SparseC gns_left_sparse(const TorusElement& x, const GnsBasis& basis) {
  const Theta& th = x.theta();
  return detail::build_shift_operator(x, basis, [&](int m, int, int, int q) { return th.q_pow(-static_cast<long>(q) * m); });
}

/// e_mn . x : U1^m U2^n U1^p U2^q = q^{-np} U1^{m+p} U2^{n+q}.
inline SparseC gns_right_sparse(const TorusElement& x, const GnsBasis& basis) {
  const Theta& th = x.theta();
  return detail::build_shift_operator(x, basis, [&](int, int n, int p, int) { return th.q_pow(-static_cast<long>(n) * p); });
}

inline OperatorMatrix gns_left(const TorusElement& x, const GnsBasis& basis) {
  return {MatrixC(gns_left_sparse(x, basis)), self_adjoint_defect(x) < 1e-14};
}

inline OperatorMatrix gns_right(const TorusElement& x, const GnsBasis& basis) {
  return {MatrixC(gns_right_sparse(x, basis)), self_adjoint_defect(x) < 1e-14};
}

/// Diagonal derivation delta_mu on the GNS space: 2 pi i m or 2 pi i n.
inline Eigen::VectorXcd derivation_diagonal(int mu, const GnsBasis& basis) {
  if (mu != 1 && mu != 2) throw ParameterError("derivation index must be 1 or 2");
  Eigen::VectorXcd d(basis.size());
  for (int i = 0; i < basis.size(); ++i) {
    auto [m, n] = basis.mode(i);
    d(i) = Complex(0.0, 2.0 * std::numbers::pi * (mu == 1 ? m : n));
  }
  return d;
}

/// Normalized matrix trace; exactly tracial on the truncated model.
inline Complex gns_trace(const MatrixC& a) { return a.trace() / static_cast<double>(a.rows()); }

/// <e_00, A e_00>; tends to the torus trace as the cutoff grows.
inline Complex interior_trace(const MatrixC& a, const GnsBasis& basis) {
  const int i = basis.index(0, 0);
  return a(i, i);
}

struct PositiveK {
  TorusElement k;
  double spectral_floor;
};

/// k = c.1 + profile, checked to be self-adjoint with truncated right-multiplication
/// spectrum bounded below by floor.
inline PositiveK make_positive_k(const TorusElement& profile, double c, double floor, const GnsBasis& basis) {
  if (floor <= 0.0) throw ParameterError("positivity floor must be positive");
  if (self_adjoint_defect(profile) > 1e-12) throw ParameterError("k-profile is not self-adjoint");
  TorusElement k = TorusElement::scalar(profile.theta(), Complex(c)) + profile;
  auto ev = hermitian_eigenvalues(gns_right_sparse(k, basis));
  const double lo = ev.empty() ? c : ev.front();
  if (lo < floor)
    throw PositivityError("k is not positive above the floor (minimum eigenvalue " + std::to_string(lo) + ")", lo);
  return {k, lo};
}

/// ε (U1 + U1*)
inline TorusElement u1_profile(const Theta& theta, double eps) {
  TorusElement u = TorusElement::u1(theta);
  return Complex(eps) * (u + u.star());
}

inline void export_csv(const MatrixC& a, const std::string& path, double drop_below = 0.0) {
  std::ofstream out(path);
  if (!out) throw ParameterError("cannot write " + path);
  out << "row,col,re,im\n" << std::setprecision(17);
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (std::abs(a(i, j)) > drop_below) out << i << ',' << j << ',' << a(i, j).real() << ',' << a(i, j).imag() << '\n';
}

}  // namespace nct
