#pragma once

// Run configuration for the numerical lab, stored as a JSON tree.

#include <fstream>
#include <sstream>
#include <string>
#include <tuple>

#include <json.hpp>

#include "nctorus/spectral/heat.hpp"
#include "nctorus/torus/gns.hpp"

namespace nct {

/// k = c + eps (U1 + U1*) + coeffs, the coefficient list made self-adjoint.
struct KProfile {
  double eps = 0.2;
  double c = 1.0;
  /// right-multiplication spectrum of k must stay above this
  double floor = 0.1;
  std::vector<std::tuple<int, int, Complex>> coeffs;
};

struct Tolerances {
  /// |c0| bound for the perturbed heat fit
  double c0 = 0.02;
  /// |c0| bound for the flat control
  double c0_flat = 5e-3;
  double c_minus1_rel = 0.01;
  double curvature_trace = 1e-8;
  double section4 = 1e-9;
  double quadrature = 1e-8;
  double lemma = 1e-10;
};

struct RunConfig {
  Theta theta = Theta(make_rational(1, 5));
  KProfile k;
  int cutoff = 24;
  HeatWindow window;
  /// optional restriction of heat traces to modes this far from the cutoff
  int interior_depth = 0;
  Tolerances tol;
  std::string out_dir;
  unsigned long seed = 20240101;
  /// random trials used by the oracle sweeps
  int trials = 10;

  TorusElement profile() const {
    TorusElement p = u1_profile(theta, k.eps);
    TorusElement extra(theta);
    for (const auto& [m, n, a] : k.coeffs) extra += TorusElement::monomial(theta, m, n, a);
    return p + self_adjoint_part(extra);
  }

  /// k on the given truncation, positivity checked there
  TorusElement positive_k(const GnsBasis& basis) const { return make_positive_k(profile(), k.c, k.floor, basis).k; }
  TorusElement positive_k() const { return positive_k(GnsBasis(cutoff)); }
};

inline nlohmann::json to_json(const RunConfig& c) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& [m, n, a] : c.k.coeffs) coeffs.push_back({{"m", m}, {"n", n}, {"re", a.real()}, {"im", a.imag()}});
  return {{"theta", theta_to_json(c.theta)},
          {"k", {{"eps", c.k.eps}, {"c", c.k.c}, {"floor", c.k.floor}, {"coeffs", coeffs}}},
          {"N", c.cutoff},
          {"window", {{"alpha", c.window.alpha}, {"t_max", c.window.t_max}, {"samples", c.window.samples}}},
          {"interior_depth", c.interior_depth},
          {"tolerances",
           {{"c0", c.tol.c0},
            {"c0_flat", c.tol.c0_flat},
            {"c_minus1_rel", c.tol.c_minus1_rel},
            {"curvature_trace", c.tol.curvature_trace},
            {"section4", c.tol.section4},
            {"quadrature", c.tol.quadrature},
            {"lemma", c.tol.lemma}}},
          {"out", c.out_dir},
          {"seed", c.seed},
          {"trials", c.trials}};
}

/// Missing keys keep their defaults.
inline RunConfig run_config_from_json(const nlohmann::json& j) {
  RunConfig c;
  auto get = [](const nlohmann::json& o, const char* key, auto& dst) {
    if (o.contains(key)) dst = o.at(key).get<std::decay_t<decltype(dst)>>();
  };
  try {
    if (j.contains("theta")) c.theta = theta_from_json(j.at("theta"));
    if (j.contains("k")) {
      const auto& k = j.at("k");
      get(k, "eps", c.k.eps);
      get(k, "c", c.k.c);
      get(k, "floor", c.k.floor);
      if (k.contains("coeffs"))
        for (const auto& e : k.at("coeffs"))
          c.k.coeffs.emplace_back(e.at("m").get<int>(), e.at("n").get<int>(),
                                  Complex(e.value("re", 0.0), e.value("im", 0.0)));
    }
    get(j, "N", c.cutoff);
    if (j.contains("window")) {
      const auto& w = j.at("window");
      get(w, "alpha", c.window.alpha);
      get(w, "t_max", c.window.t_max);
      get(w, "samples", c.window.samples);
    }
    get(j, "interior_depth", c.interior_depth);
    if (j.contains("tolerances")) {
      const auto& t = j.at("tolerances");
      get(t, "c0", c.tol.c0);
      get(t, "c0_flat", c.tol.c0_flat);
      get(t, "c_minus1_rel", c.tol.c_minus1_rel);
      get(t, "curvature_trace", c.tol.curvature_trace);
      get(t, "section4", c.tol.section4);
      get(t, "quadrature", c.tol.quadrature);
      get(t, "lemma", c.tol.lemma);
    }
    get(j, "out", c.out_dir);
    get(j, "seed", c.seed);
    get(j, "trials", c.trials);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad config: ") + e.what());
  }
  if (c.cutoff < 1) throw ParameterError("N must be positive");
  return c;
}

inline RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open config " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  return run_config_from_json(j);
}

inline void save_run_config(const RunConfig& c, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParameterError("cannot write " + path);
  out << to_json(c).dump(2) << '\n';
}

/// "eps=0.2,c=1,floor=0.1" overrides.
inline void apply_profile_spec(KProfile& k, const std::string& spec) {
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ParseError("bad k-profile entry '" + item + "'");
    const std::string key = item.substr(0, eq);
    double v = 0.0;
    try {
      v = std::stod(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw ParseError("bad k-profile value in '" + item + "'");
    }
    if (key == "eps")
      k.eps = v;
    else if (key == "c")
      k.c = v;
    else if (key == "floor")
      k.floor = v;
    else
      throw ParseError("unknown k-profile key '" + key + "'");
  }
}

}  // namespace nct
