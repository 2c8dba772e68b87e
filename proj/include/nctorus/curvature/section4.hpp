#pragma once

// Two trace functionals in k, X = delta_1(k), X11 = delta_1^2(k):
//   rosenberg = 2 t(-9/4 k^-2 X k^-1 X + 1/4 k^-3 X X + k^-2 X11)
//   twobein   =   t(-4 k^-2 X k^-1 X + 2 k^-2 X11)
// evaluated on GNS matrices and by a cyclic-word rewrite.

#include <algorithm>
#include <map>
#include <sstream>
#include <vector>

#include <Eigen/Cholesky>

#include "nctorus/torus/gns.hpp"
#include "nctorus/symbol/symbol_expr.hpp"

namespace nct {

/// t(k^{a_1} L_1 k^{a_2} L_2 ...), stored up to rotation.
using TraceWord = std::vector<std::pair<int, Letter>>;

inline TraceWord canonical(TraceWord w) {
  TraceWord best = w;
  for (std::size_t r = 1; r < w.size(); ++r) {
    std::rotate(w.begin(), w.begin() + 1, w.end());
    if (w < best) best = w;
  }
  return best;
}

class TraceExpr {
 public:
  void add(const TraceWord& w, const Rational& c) {
    if (c == 0) return;
    auto key = canonical(w);
    auto [it, inserted] = terms_.emplace(key, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  const std::map<TraceWord, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    for (const auto& [w, c] : terms_) {
      os << (c < 0 ? "- " : "+ ") << abs(c) << " t(";
      for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) os << " ";
        if (w[i].first != 0) os << "k^" << w[i].first << " ";
        os << letter_name(w[i].second);
      }
      os << ")\n";
    }
    return os.str();
  }

 private:
  std::map<TraceWord, Rational> terms_;
};

/// delta_1(k^a) as a list of (k^b X k^c, coefficient).
inline std::vector<std::tuple<int, int, Rational>> delta_k_power_terms(int a) {
  std::vector<std::tuple<int, int, Rational>> out;
  if (a > 0)
    for (int j = 0; j < a; ++j) out.emplace_back(j, a - 1 - j, Rational(1));
  for (int j = 0; j < -a; ++j) out.emplace_back(a + j, -1 - j, Rational(-1));
  return out;
}

/// Integrates every second-order letter by parts: t(k^a X11) = -t(delta_1(k^a) X).
inline TraceExpr leibniz_reduce(const TraceExpr& e) {
  TraceExpr out;
  for (const auto& [w, c] : e.terms()) {
    if (w.size() == 1 && w[0].second == Letter::d11) {
      for (const auto& [b, d, s] : delta_k_power_terms(w[0].first)) out.add({{b, Letter::d1}, {d, Letter::d1}}, -c * s);
      continue;
    }
    for (const auto& [p, l] : w)
      if (!is_first_order(l)) throw ShapeError("second-order letter inside a longer trace word");
    out.add(w, c);
  }
  return out;
}

inline TraceExpr rosenberg_expr() {
  TraceExpr e;
  e.add({{-2, Letter::d1}, {-1, Letter::d1}}, make_rational(-9, 2));
  e.add({{-3, Letter::d1}, {0, Letter::d1}}, make_rational(1, 2));
  e.add({{-2, Letter::d11}}, 2);
  return e;
}

inline TraceExpr twobein_expr() {
  TraceExpr e;
  e.add({{-2, Letter::d1}, {-1, Letter::d1}}, -4);
  e.add({{-2, Letter::d11}}, 2);
  return e;
}

struct Section4Values {
  /// normalized matrix trace of the truncated model
  double rosenberg_matrix = 0.0, twobein_matrix = 0.0;
  /// <e00, . e00>
  double rosenberg_interior = 0.0, twobein_interior = 0.0;
  double min_eigenvalue = 0.0;
};

inline Section4Values section4_functionals(const TorusElement& k, const GnsBasis& basis) {
  const MatrixC K = gns_right(k, basis).mat;
  Eigen::LLT<MatrixC> llt(K);
  Eigen::SelfAdjointEigenSolver<MatrixC> es(K, Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues().minCoeff();
  if (llt.info() != Eigen::Success || lo <= 0.0) throw PositivityError("k is not positive", lo);
  const MatrixC I = MatrixC::Identity(K.rows(), K.cols());
  const MatrixC Ki = llt.solve(I);
  const MatrixC Ki2 = Ki * Ki;
  const MatrixC X = gns_right(delta(1, k), basis).mat;
  const MatrixC X11 = gns_right(delta(1, delta(1, k)), basis).mat;
  const MatrixC A = Ki2 * X * Ki * X;
  const MatrixC B = Ki2 * Ki * X * X;
  const MatrixC C = Ki2 * X11;
  const MatrixC ros = 2.0 * (-2.25 * A + 0.25 * B + C);
  const MatrixC two = -4.0 * A + 2.0 * C;
  Section4Values v;
  v.rosenberg_matrix = gns_trace(ros).real();
  v.twobein_matrix = gns_trace(two).real();
  v.rosenberg_interior = interior_trace(ros, basis).real();
  v.twobein_interior = interior_trace(two, basis).real();
  v.min_eigenvalue = lo;
  return v;
}

}  // namespace nct
