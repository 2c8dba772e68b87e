#pragma once

// Small dense/sparse helpers on top of Eigen.

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <algorithm>
#include <complex>
#include <numeric>
#include <vector>

namespace nct {

using MatrixC = Eigen::MatrixXcd;
using VectorC = Eigen::VectorXcd;
using SparseC = Eigen::SparseMatrix<std::complex<double>>;

/// Connected components of the symmetric sparsity pattern of a square matrix.
inline std::vector<std::vector<int>> sparsity_components(const SparseC& a) {
  const int n = static_cast<int>(a.rows());
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int k = 0; k < a.outerSize(); ++k)
    for (SparseC::InnerIterator it(a, k); it; ++it) {
      if (it.value() == 0.0) continue;
      int r = find(static_cast<int>(it.row())), c = find(static_cast<int>(it.col()));
      if (r != c) parent[std::max(r, c)] = std::min(r, c);
    }
  std::vector<std::vector<int>> groups(n);
  for (int i = 0; i < n; ++i) groups[find(i)].push_back(i);
  std::vector<std::vector<int>> out;
  for (auto& g : groups)
    if (!g.empty()) out.push_back(std::move(g));
  return out;
}

inline MatrixC dense_block(const SparseC& a, const std::vector<int>& idx) {
  MatrixC b = MatrixC::Zero(static_cast<Eigen::Index>(idx.size()), static_cast<Eigen::Index>(idx.size()));
  std::vector<int> pos(a.rows(), -1);
  for (std::size_t i = 0; i < idx.size(); ++i) pos[idx[i]] = static_cast<int>(i);
  for (int j : idx)
    for (SparseC::InnerIterator it(a, j); it; ++it) {
      int r = pos[it.row()];
      if (r >= 0) b(r, pos[j]) = it.value();
    }
  return b;
}

/// Eigenvalues of a Hermitian sparse matrix, computed block by block. Sorted ascending.
inline std::vector<double> hermitian_eigenvalues(const SparseC& a) {
  std::vector<double> ev;
  ev.reserve(a.rows());
  for (const auto& comp : sparsity_components(a)) {
    if (comp.size() == 1) {
      ev.push_back(a.coeff(comp[0], comp[0]).real());
      continue;
    }
    Eigen::SelfAdjointEigenSolver<MatrixC> es(dense_block(a, comp), Eigen::EigenvaluesOnly);
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) ev.push_back(es.eigenvalues()(i));
  }
  std::sort(ev.begin(), ev.end());
  return ev;
}

inline double relative_norm(const MatrixC& a, const MatrixC& reference) {
  double r = reference.norm();
  return r == 0.0 ? a.norm() : a.norm() / r;
}

}  // namespace nct
