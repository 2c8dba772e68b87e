#pragma once

// D = sigma1 d1 + sigma2 (k d2 + 1/2 d2(k)) on the truncated GNS space (x) C^2, with the
// self-adjoint derivations d_mu = diag(2 pi m), diag(2 pi n) and k acting by right multiplication.
// With A = (K d2 + d2 K)/2 and P = d1 + iA:  D = [[0, P*], [P, 0]].

#include <numbers>
#include <optional>
#include <vector>

#include "nctorus/core/errors.hpp"
#include "nctorus/core/linalg.hpp"
#include "nctorus/torus/gns.hpp"

namespace nct {

struct DiracMatrix {
  GnsBasis basis{0};
  SparseC d;
  double hermiticity_defect = 0.0;  // ||D - D*|| / ||D||
  double k_min_eigenvalue = 0.0;
};

inline void check_positive_k(const TorusElement& k, const GnsBasis& basis, double* lo_out = nullptr) {
  if (self_adjoint_defect(k) > 1e-12) throw ParameterError("k is not self-adjoint");
  auto ev = hermitian_eigenvalues(gns_right_sparse(k, basis));
  const double lo = ev.empty() ? 0.0 : ev.front();
  if (!(lo > 0.0)) throw PositivityError("k is not positive (minimum eigenvalue " + std::to_string(lo) + ")", lo);
  if (lo_out) *lo_out = lo;
}

inline DiracMatrix build_dirac(const TorusElement& k, const GnsBasis& basis) {
  DiracMatrix D;
  D.basis = basis;
  check_positive_k(k, basis, &D.k_min_eigenvalue);
  const int n = basis.size();
  const SparseC K = gns_right_sparse(k, basis);
  std::vector<double> d1(n), d2(n);
  for (int i = 0; i < n; ++i) {
    auto [m, nn] = basis.mode(i);
    d1[i] = 2.0 * std::numbers::pi * m;
    d2[i] = 2.0 * std::numbers::pi * nn;
  }
  // A_ij = K_ij (d2_j + d2_i) / 2
  std::vector<Eigen::Triplet<Complex>> trip;
  const Complex I(0.0, 1.0);
  for (int j = 0; j < K.outerSize(); ++j)
    for (SparseC::InnerIterator it(K, j); it; ++it) {
      const int i = static_cast<int>(it.row());
      const Complex a = 0.5 * it.value() * (d2[i] + d2[j]);
      // P = d1 + iA in the lower-left block, P* in the upper-right block
      trip.emplace_back(n + i, j, I * a);
      trip.emplace_back(j, n + i, std::conj(I * a));
    }
  for (int i = 0; i < n; ++i) {
    trip.emplace_back(n + i, i, Complex(d1[i]));
    trip.emplace_back(i, n + i, Complex(d1[i]));
  }
  D.d.resize(2 * n, 2 * n);
  D.d.setFromTriplets(trip.begin(), trip.end());
  const SparseC diff = D.d - SparseC(D.d.adjoint());
  const double nrm = D.d.norm();
  D.hermiticity_defect = nrm == 0.0 ? 0.0 : diff.norm() / nrm;
  return D;
}

/// Eigenvalues of D with one weight per eigenvector, <v, W v>.
struct SpectralData {
  std::vector<double> eigenvalues;
  std::vector<double> weights;
};

/// Weight operator: optional left multiplication by f on both spinor components, optional
/// grading diag(1, -1), optional projection onto modes at depth >= interior_depth.
struct WeightSpec {
  std::optional<TorusElement> f;
  /// f acts by right multiplication, on the same side as k
  bool right = false;
  bool chiral = false;
  int interior_depth = 0;
  bool trivial() const { return !f && !chiral && interior_depth == 0; }
};

inline SparseC weight_operator(const WeightSpec& w, const GnsBasis& basis) {
  const int n = basis.size();
  SparseC F(n, n);
  if (w.f) {
    F = w.right ? gns_right_sparse(*w.f, basis) : gns_left_sparse(*w.f, basis);
  } else {
    F.setIdentity();
  }
  if (w.interior_depth > 0) {
    SparseC Pi(n, n);
    std::vector<Eigen::Triplet<Complex>> t;
    for (int i = 0; i < n; ++i)
      if (basis.depth(i) >= w.interior_depth) t.emplace_back(i, i, 1.0);
    Pi.setFromTriplets(t.begin(), t.end());
    F = Pi * F * Pi;
  }
  std::vector<Eigen::Triplet<Complex>> trip;
  for (int j = 0; j < F.outerSize(); ++j)
    for (SparseC::InnerIterator it(F, j); it; ++it) {
      trip.emplace_back(static_cast<int>(it.row()), j, it.value());
      trip.emplace_back(n + static_cast<int>(it.row()), n + j, w.chiral ? -it.value() : it.value());
    }
  SparseC W(2 * n, 2 * n);
  W.setFromTriplets(trip.begin(), trip.end());
  return W;
}

inline SpectralData diagonalize(const DiracMatrix& D, const WeightSpec& w = {}) {
  SpectralData out;
  const bool need_vectors = !w.trivial();
  const SparseC W = need_vectors ? weight_operator(w, D.basis) : SparseC();
  std::vector<std::pair<double, double>> pairs;
  pairs.reserve(D.d.rows());
  for (const auto& comp : sparsity_components(D.d)) {
    const MatrixC block = dense_block(D.d, comp);
    if (!need_vectors) {
      Eigen::SelfAdjointEigenSolver<MatrixC> es(block, Eigen::EigenvaluesOnly);
      for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) pairs.emplace_back(es.eigenvalues()(i), 1.0);
      continue;
    }
    Eigen::SelfAdjointEigenSolver<MatrixC> es(block);
    const MatrixC Wb = dense_block(W, comp);
    const MatrixC WV = Wb * es.eigenvectors();
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
      pairs.emplace_back(es.eigenvalues()(i), es.eigenvectors().col(i).dot(WV.col(i)).real());
  }
  std::sort(pairs.begin(), pairs.end());
  for (const auto& [l, wt] : pairs) {
    out.eigenvalues.push_back(l);
    out.weights.push_back(wt);
  }
  return out;
}

/// max |lambda_i + lambda_{n-1-i}| / max |lambda|
inline double spectral_asymmetry(const std::vector<double>& ev) {
  if (ev.empty()) return 0.0;
  double worst = 0.0, scale = std::max(std::abs(ev.front()), std::abs(ev.back()));
  for (std::size_t i = 0; i < ev.size(); ++i) worst = std::max(worst, std::abs(ev[i] + ev[ev.size() - 1 - i]));
  return scale == 0.0 ? 0.0 : worst / scale;
}

inline void export_spectrum_csv(const std::vector<double>& ev, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParameterError("cannot write " + path);
  out << "index,eigenvalue\n" << std::setprecision(17);
  for (std::size_t i = 0; i < ev.size(); ++i) out << i << ',' << ev[i] << '\n';
}

}  // namespace nct
