#pragma once

// Trace of a curvature package on the truncated GNS model: each entry F acts on operands
// built from right multiplication by k and its derivatives.

#include <vector>

#include "nctorus/curvature/package.hpp"
#include "nctorus/spectral/modular_apply.hpp"
#include "nctorus/torus/gns.hpp"

namespace nct {

struct OperandMatrices {
  MatrixC X;
  std::optional<MatrixC> Y;
};

inline MatrixC letter_matrix(Letter l, const TorusElement& k, const GnsBasis& basis) {
  switch (l) {
    case Letter::d1:
      return gns_right(delta(1, k), basis).mat;
    case Letter::d2:
      return gns_right(delta(2, k), basis).mat;
    case Letter::d11:
      return gns_right(delta(1, delta(1, k)), basis).mat;
    case Letter::d12:
      return gns_right(delta(1, delta(2, k)), basis).mat;
    case Letter::d22:
      return gns_right(delta(2, delta(2, k)), basis).mat;
  }
  throw ShapeError("unknown letter");
}

inline OperandMatrices operand_matrices(OperandTag tag, const TorusElement& k, const GnsBasis& basis) {
  const auto letters = tag_letters(tag);
  if (tag_operands(tag) == 2) return {letter_matrix(letters[0], k, basis), letter_matrix(letters[1], k, basis)};
  if (letters.size() == 2) return {letter_matrix(letters[0], k, basis) * letter_matrix(letters[1], k, basis), std::nullopt};
  return {letter_matrix(letters[0], k, basis), std::nullopt};
}

struct CurvatureTrace {
  std::vector<std::pair<OperandTag, std::complex<double>>> entries;
  std::complex<double> total = 0.0;
  double largest = 0.0;
  double relative() const { return largest == 0.0 ? std::abs(total) : std::abs(total) / largest; }
};

/// Normalized matrix trace of sum_entries F(operands).
inline CurvatureTrace numeric_curvature_trace(const CurvaturePackage& p, const TorusElement& k, const GnsBasis& basis) {
  const MatrixC K = gns_right(k, basis).mat;
  const ModularEigen ke = modular_eigen(K);
  CurvatureTrace r;
  const double n = static_cast<double>(basis.size());
  for (const auto& e : p.entries) {
    if (e.f.is_zero()) continue;
    const OperandMatrices ops = operand_matrices(e.tag, k, basis);
    const std::complex<double> v = modular_trace(e.f, ops.X, ops.Y ? &*ops.Y : nullptr, ke) / n;
    r.entries.emplace_back(e.tag, v);
    r.total += v;
    r.largest = std::max(r.largest, std::abs(v));
  }
  return r;
}

/// Right-multiplication matrix of the element a package describes.
inline MatrixC curvature_matrix(const CurvaturePackage& p, const TorusElement& k, const GnsBasis& basis) {
  const ModularEigen ke = modular_eigen(gns_right(k, basis).mat);
  MatrixC R = MatrixC::Zero(basis.size(), basis.size());
  for (const auto& e : p.entries) {
    if (e.f.is_zero()) continue;
    const OperandMatrices ops = operand_matrices(e.tag, k, basis);
    R += apply_modular(e.f, ops.X, ops.Y ? &*ops.Y : nullptr, ke);
  }
  return R;
}

/// t(f R) = <e00, R f e00> with f acting on the left and R on the right.
inline Complex curvature_pairing(const CurvaturePackage& p, const TorusElement& k, const TorusElement& f, const GnsBasis& basis) {
  const MatrixC R = curvature_matrix(p, k, basis);
  const Eigen::VectorXcd fe = gns_left(f, basis).mat.col(basis.index(0, 0));
  return (R * fe)(basis.index(0, 0));
}

}  // namespace nct
