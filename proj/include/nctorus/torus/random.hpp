#pragma once

#include <random>

#include "nctorus/torus/torus_element.hpp"

namespace nct {

/// Random self-adjoint profile with modes |m|, |n| <= degree and coefficients of size <= amplitude.
inline TorusElement random_profile(const Theta& theta, std::mt19937_64& rng, int degree = 1, double amplitude = 0.2) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  TorusElement p(theta);
  for (int m = -degree; m <= degree; ++m)
    for (int n = -degree; n <= degree; ++n) {
      if (m == 0 && n == 0) continue;
      p += TorusElement::monomial(theta, m, n, Complex(amplitude * u(rng), amplitude * u(rng)));
    }
  return self_adjoint_part(p);
}

/// c + profile with c = 1 + sum |a_mn|, which dominates the operator norm of the profile.
inline TorusElement random_positive_k(const Theta& theta, std::mt19937_64& rng, int degree = 1, double amplitude = 0.2) {
  TorusElement p = random_profile(theta, rng, degree, amplitude);
  double norm = 0.0;
  for (const auto& [k, c] : p.coeffs()) norm += std::abs(c);
  return TorusElement::scalar(theta, Complex(1.0 + norm)) + p;
}

}  // namespace nct
