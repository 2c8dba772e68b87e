#pragma once

// Sweeps pairing each closed form with an independent numerical route.

#include <random>
#include <string>
#include <vector>

#include "nctorus/curvature/assemble.hpp"
#include "nctorus/rearrangement/quadrature.hpp"
#include "nctorus/spectral/modular_apply.hpp"

namespace nct {

struct QuadratureSweep {
  int descriptors = 0;
  int points = 0;
  double worst = 0.0;
  std::string worst_descriptor;
  double worst_s = 0.0, worst_t = 0.0;
};

/// Every descriptor of the even part of b2 (both channels) at `per_descriptor` random
/// points (s, t) in (lo, hi)^2.
inline QuadratureSweep quadrature_sweep(int per_descriptor, std::mt19937_64& rng, double lo = 0.2, double hi = 5.0,
                                        QuadratureOptions opt = {}) {
  std::uniform_real_distribution<double> u(lo, hi);
  QuadratureSweep r;
  for (Channel ch : {Channel::plain, Channel::chiral}) {
    const SymbolExpr reduced = reduced_b2(ch);
    for (const auto& [w, c] : reduced.terms()) {
      const IntegralDescriptor d = describe(w, c);
      const ModularFunction f = eval_closed(d);
      ++r.descriptors;
      for (int i = 0; i < per_descriptor; ++i) {
        const double s = u(rng), t = u(rng);
        const double closed = f.evaluate(s, t);
        const double quad = eval_quadrature(d, s, t, opt);
        const double err = std::abs(quad - closed) / std::max(std::abs(closed), 1e-300);
        ++r.points;
        if (err > r.worst) {
          r.worst = err;
          r.worst_descriptor = d.to_string();
          r.worst_s = s;
          r.worst_t = t;
        }
      }
    }
  }
  return r;
}

struct LemmaSweep {
  int trials = 0;
  double worst = 0.0;
};

/// Random n x n positive k, random X, Y, random polynomial F of degree <= deg.
inline LemmaSweep lemma_sweep(int trials, std::mt19937_64& rng, int n = 8, int deg = 4) {
  LemmaSweep r;
  for (int i = 0; i < trials; ++i) {
    const MatrixC K = random_positive_matrix(n, rng);
    const MatrixC X = random_matrix(n, rng), Y = random_matrix(n, rng);
    const Polynomial F = random_polynomial(deg, rng);
    r.worst = std::max(r.worst, lemma_trial(F, K, X, Y).error());
    ++r.trials;
  }
  return r;
}

}  // namespace nct
