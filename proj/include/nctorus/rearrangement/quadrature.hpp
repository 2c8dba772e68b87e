#pragma once

// Numerical value of the (u, v) double integral of a descriptor with k = 1,
// by nested tanh-sinh quadrature on (0, inf). The inner variable is u = w^2 so the
// integrand stays bounded at the origin.

#include <cmath>
#include <limits>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "nctorus/rearrangement/descriptor.hpp"

namespace nct {

struct QuadratureOptions {
  double tolerance = 1e-11;
  std::size_t max_refinements = 15;
};

/// 2 int dv int du u^{k2-1/2} v^{2k1} s^{n2} t^{n3}
///   / ((1+v^2+u)^m1 (1+v^2+u s^2)^m2 (1+v^2+u t^2)^m3),
/// times the real (or imaginary) part of the coefficient.
inline double eval_quadrature(const IntegralDescriptor& d, double s, double t, QuadratureOptions opt = {}) {
  if (!(s > 0.0) || !(t > 0.0)) throw ParameterError("quadrature needs s, t > 0");
  if (!d.converges()) throw ConvergenceError("divergent descriptor: " + d.to_string());
  using boost::math::quadrature::tanh_sinh;
  tanh_sinh<double> outer(opt.max_refinements);
  tanh_sinh<double> inner(opt.max_refinements);
  double inf = std::numeric_limits<double>::infinity();
  double tol = opt.tolerance;
  const double s2 = s * s, t2 = t * t;
  auto v_integrand = [&](double v) {
    const double a = 1.0 + v * v;
    auto u_integrand = [&](double w) {
      const double u = w * w;
      double r = 2.0 * std::pow(w, 2 * d.k2) * std::pow(a + u, -d.m[0]);
      if (d.m[1]) r *= std::pow(a + u * s2, -d.m[1]);
      if (d.m[2]) r *= std::pow(a + u * t2, -d.m[2]);
      return std::isfinite(r) ? r : 0.0;
    };
    double err = 0.0;
    double val = inner.integrate(u_integrand, 0.0, inf, tol, &err);
    const double r = std::pow(v, 2 * d.k1) * val;
    return std::isfinite(r) ? r : 0.0;
  };
  double err = 0.0;
  const double total = outer.integrate(v_integrand, 0.0, inf, tol, &err);
  const double c = d.coeff.is_real() ? d.coeff.re.get_d() : d.coeff.im.get_d();
  return 2.0 * c * std::pow(s, d.n[1]) * std::pow(t, d.n[2]) * total;
}

}  // namespace nct
