#pragma once

// theta = 0: letters commute, the xi-integral is elementary, and the result must be the
// Gaussian curvature of dx^2 + k^-2 dy^2 times the volume density k^-1.

#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include "nctorus/curvature/assemble.hpp"
#include "nctorus/symbol/classical.hpp"

namespace nct {

inline ClassicalExpr load_classical_golden(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return collapse(parse_symbol_lines(in));
}

/// xi-integral of b2 in the commutative case: -(1/3) k^-3 (d1 k)^2 + (1/6) k^-2 d11 k, times pi
inline ClassicalExpr expected_classical_integral() {
  return classical_term(make_rational(-1, 3), -3, {Letter::d1, Letter::d1}) +
         classical_term(make_rational(1, 6), -2, {Letter::d11});
}

/// sqrt(g) R = 2 k^-2 d11 k - 4 k^-3 (d1 k)^2
inline ClassicalExpr expected_dressed_curvature() {
  return classical_term(2, -2, {Letter::d11}) + classical_term(-4, -3, {Letter::d1, Letter::d1});
}

/// Commutative image of a package evaluated at s = t = 1; the result carries one factor of pi.
inline ClassicalExpr collapse_package(const CurvaturePackage& p) {
  ClassicalExpr out;
  for (const auto& e : p.entries) {
    if (e.f.is_zero()) continue;
    const Rational v = e.f.rational_at(1, 1);
    Gaussian c = e.f.ipow() ? Gaussian(0, v) : Gaussian(v);
    ClassicalMonomial m;
    m.kpow = e.f.k_prefactor();
    for (auto l : tag_letters(e.tag)) m.letters[static_cast<int>(l)] += 1;
    out.add(m, c);
  }
  return out;
}

/// Gaussian curvature of dx^2 + f(x)^2 dy^2 is -f''/f, scalar curvature R = -2 f''/f.
/// Compared at sample points with the dressed formula for f = 1/k, using
/// k, k', k'' supplied by the caller.
struct ProfileSample {
  double x, k, dk, d2k;
};

inline double dressed_curvature_formula(const ProfileSample& p) {
  return 2.0 * p.d2k / (p.k * p.k) - 4.0 * p.dk * p.dk / (p.k * p.k * p.k);
}

inline double metric_curvature_oracle(const ProfileSample& p) {
  // f = 1/k, f' = -k'/k^2, f'' = -k''/k^2 + 2 k'^2/k^3
  const double f = 1.0 / p.k;
  const double f2 = -p.d2k / (p.k * p.k) + 2.0 * p.dk * p.dk / (p.k * p.k * p.k);
  const double R = -2.0 * f2 / f;
  return f * R;  // sqrt(g) = f
}

/// k(x) = 1 + a cos(2 pi x) + b sin(4 pi x)
inline std::vector<ProfileSample> sample_profile(double a, double b, int n) {
  std::vector<ProfileSample> out;
  const double w = 2.0 * std::numbers::pi;
  for (int i = 0; i < n; ++i) {
    const double x = static_cast<double>(i) / n;
    out.push_back({x, 1.0 + a * std::cos(w * x) + b * std::sin(2 * w * x), -a * w * std::sin(w * x) + 2 * b * w * std::cos(2 * w * x),
                   -a * w * w * std::cos(w * x) - 4 * b * w * w * std::sin(2 * w * x)});
  }
  return out;
}

struct ClassicalCheck {
  ClassicalExpr plain, chiral;
  bool plain_golden = false, chiral_golden = false;
  ClassicalExpr integral, chiral_integral;
  bool integral_ok = false, chiral_zero = false;
  /// 48 pi / (4 pi^2) times the integral (the pi of the integral cancels)
  ClassicalExpr curvature;
  bool curvature_ok = false;
  bool package_ok = false;
  double profile_error = 0.0;
  bool constant_k_zero = false;

  bool ok() const {
    return plain_golden && chiral_golden && integral_ok && chiral_zero && curvature_ok && package_ok && profile_error < 1e-12 &&
           constant_k_zero;
  }

  std::string report() const {
    std::ostringstream os;
    os << "collapsed b2 (spin 1), " << plain.size() << " terms: " << (plain_golden ? "matches golden" : "DIFFERS") << "\n"
       << "collapsed b2 (chiral), " << chiral.size() << " terms: " << (chiral_golden ? "matches golden" : "DIFFERS") << "\n"
       << "xi-integral / pi:\n"
       << integral.to_string() << "chiral xi-integral: " << (chiral_zero ? "0" : "NONZERO") << "\n"
       << "48 pi (1/4 pi^2) integral:\n"
       << curvature.to_string() << "dressed curvature formula: " << (curvature_ok ? "ok" : "FAIL") << "\n"
       << "package at s=t=1: " << (package_ok ? "ok" : "FAIL") << "\n"
       << "metric oracle max error: " << profile_error << "\n";
    return os.str();
  }
};

inline ClassicalCheck classical_check(const CurvaturePackage& plain_package) {
  ClassicalCheck c;
  c.plain = collapse(reduced_b2(Channel::plain));
  c.chiral = collapse(reduced_b2(Channel::chiral));
  c.plain_golden = c.plain == load_classical_golden(data_dir() + "/golden/b2_classical_plain.txt");
  c.chiral_golden = c.chiral == load_classical_golden(data_dir() + "/golden/b2_classical_chiral.txt");
  c.integral = integrate_xi(c.plain);
  c.chiral_integral = integrate_xi(c.chiral);
  c.integral_ok = c.integral == expected_classical_integral();
  c.chiral_zero = c.chiral_integral.is_zero();
  c.curvature = Gaussian(12) * c.integral;
  c.curvature_ok = c.curvature == expected_dressed_curvature();
  c.package_ok = collapse_package(plain_package) == expected_classical_integral();
  for (const auto& p : sample_profile(0.3, 0.1, 64))
    c.profile_error = std::max(c.profile_error, std::abs(dressed_curvature_formula(p) - metric_curvature_oracle(p)));
  c.constant_k_zero = dressed_curvature_formula({0.0, 2.5, 0.0, 0.0}) == 0.0;
  return c;
}

}  // namespace nct
