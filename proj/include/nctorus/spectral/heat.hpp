#pragma once

// Tr(W e^{-t D^2}) ~ c_{-1}/t + c_0 + c_1 t, fitted on a log-spaced window.

#include <cmath>
#include <fstream>
#include <iomanip>
#include <string>
#include <vector>

#include <json.hpp>

#include "nctorus/spectral/dirac.hpp"

namespace nct {

struct HeatWindow {
  /// t_min = alpha / N^2
  double alpha = 1.0;
  double t_max = 0.01;
  int samples = 40;
};

struct HeatOptions {
  HeatWindow window;
  WeightSpec weight;
  /// |lambda| below this counts as kernel; default 1e-6 of the flat gap 2 pi
  double kernel_tol = 1e-6 * 2.0 * std::numbers::pi;
};

struct SpectralFit {
  std::vector<double> eigenvalues;
  std::vector<double> t;
  std::vector<double> samples;
  double c_minus1 = 0.0, c0 = 0.0, c1 = 0.0;
  /// rms of h(t) - model(t)
  double residual = 0.0;
  /// least-squares standard error of c0
  double stderr_c0 = 0.0;
  /// |c0(3 terms) - c0(4 terms)|
  double systematic_c0 = 0.0;
  double error_bar = 0.0;
  double t_min = 0.0, t_max = 0.0;
  int dim_ker = 0;
  double condition = 0.0;
  std::string warning;
};

inline std::vector<double> log_grid(double a, double b, int n) {
  if (!(a > 0.0) || !(b > a) || n < 2) throw ParameterError("bad heat-trace window");
  std::vector<double> t(n);
  for (int i = 0; i < n; ++i) t[i] = a * std::pow(b / a, static_cast<double>(i) / (n - 1));
  return t;
}

inline double heat_trace(const SpectralData& s, double t) {
  double h = 0.0;
  for (std::size_t i = 0; i < s.eigenvalues.size(); ++i) h += s.weights[i] * std::exp(-t * s.eigenvalues[i] * s.eigenvalues[i]);
  return h;
}

struct LinearFit {
  Eigen::VectorXd coeffs;
  Eigen::VectorXd stderr_;
  double rss = 0.0;
  double condition = 0.0;
};

/// Least squares for t h(t) = sum_j c_j t^j, j = 0..terms-1 (c_0 here is c_{-1}).
inline LinearFit fit_scaled(const std::vector<double>& t, const std::vector<double>& h, int terms) {
  const int n = static_cast<int>(t.size());
  if (n <= terms) throw ParameterError("not enough heat-trace samples for the fit");
  Eigen::MatrixXd A(n, terms);
  Eigen::VectorXd b(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < terms; ++j) A(i, j) = std::pow(t[i], j);
    b(i) = t[i] * h[i];
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  LinearFit f;
  f.coeffs = svd.solve(b);
  const Eigen::VectorXd r = A * f.coeffs - b;
  f.rss = r.squaredNorm();
  const auto& sv = svd.singularValues();
  f.condition = sv(0) / sv(sv.size() - 1);
  const double sigma2 = f.rss / (n - terms);
  const Eigen::MatrixXd cov = sigma2 * (A.transpose() * A).inverse();
  f.stderr_ = cov.diagonal().cwiseSqrt();
  return f;
}

/// Fit of given samples (used directly for synthetic spectra).
inline SpectralFit fit_samples(const std::vector<double>& t, const std::vector<double>& h) {
  SpectralFit s;
  s.t = t;
  s.samples = h;
  s.t_min = t.front();
  s.t_max = t.back();
  const LinearFit f3 = fit_scaled(t, h, 3);
  const LinearFit f4 = fit_scaled(t, h, 4);
  s.c_minus1 = f3.coeffs(0);
  s.c0 = f3.coeffs(1);
  s.c1 = f3.coeffs(2);
  s.stderr_c0 = f3.stderr_(1);
  s.systematic_c0 = std::abs(f3.coeffs(1) - f4.coeffs(1));
  s.error_bar = std::max(s.stderr_c0, s.systematic_c0);
  s.condition = f3.condition;
  double rss = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double model = s.c_minus1 / t[i] + s.c0 + s.c1 * t[i];
    rss += (h[i] - model) * (h[i] - model);
  }
  s.residual = std::sqrt(rss / t.size());
  if (s.condition > 1e10) s.warning = "ill-conditioned fit (condition number " + std::to_string(s.condition) + ")";
  return s;
}

inline SpectralFit heat_fit(const SpectralData& spec, int cutoff, const HeatOptions& opt = {}) {
  const double t_min = opt.window.alpha / (static_cast<double>(cutoff) * cutoff);
  const auto t = log_grid(t_min, opt.window.t_max, opt.window.samples);
  std::vector<double> h;
  h.reserve(t.size());
  for (double x : t) h.push_back(heat_trace(spec, x));
  SpectralFit s = fit_samples(t, h);
  s.eigenvalues = spec.eigenvalues;
  for (double l : spec.eigenvalues)
    if (std::abs(l) < opt.kernel_tol) ++s.dim_ker;
  return s;
}

inline SpectralFit heat_fit(const DiracMatrix& D, const HeatOptions& opt = {}) {
  return heat_fit(diagonalize(D, opt.weight), D.basis.cutoff(), opt);
}

/// zeta_{D^2}(0) = c0 - dim ker D; its k-independence is the Gauss-Bonnet statement.
struct ZetaZero {
  double value = 0.0;
  double error_bar = 0.0;
  int dim_ker = 0;
};

inline ZetaZero zeta_at_zero(const SpectralFit& s) { return {s.c0 - s.dim_ker, s.error_bar, s.dim_ker}; }

inline nlohmann::json to_json(const SpectralFit& s) {
  nlohmann::json j = {{"c_minus1", s.c_minus1},   {"c0", s.c0},
                      {"c1", s.c1},               {"residual", s.residual},
                      {"stderr_c0", s.stderr_c0}, {"systematic_c0", s.systematic_c0},
                      {"error_bar", s.error_bar}, {"window", {s.t_min, s.t_max}},
                      {"samples", s.t.size()},    {"dim_ker", s.dim_ker},
                      {"condition", s.condition}};
  if (!s.warning.empty()) j["warning"] = s.warning;
  return j;
}

inline void export_heat_csv(const SpectralFit& s, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParameterError("cannot write " + path);
  out << "t,value,fit\n" << std::setprecision(17);
  for (std::size_t i = 0; i < s.t.size(); ++i)
    out << s.t[i] << ',' << s.samples[i] << ',' << s.c_minus1 / s.t[i] + s.c0 + s.c1 * s.t[i] << '\n';
}

}  // namespace nct
