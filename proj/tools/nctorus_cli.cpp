// nctorus: command-line front end for the symbolic pipeline and the numerical lab.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>

#include <CLI11.hpp>
#include <json.hpp>

#include "nctorus/nctorus.hpp"
#include "nctorus/oracle.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace nct;

namespace {

/// Floats rounded to 12 significant digits so identical runs print identical bytes.
json fixed(const json& j) {
  if (j.is_number_float()) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", j.get<double>());
    return std::stod(buf);
  }
  if (j.is_array() || j.is_object()) {
    json out = j;
    for (auto& v : out) v = fixed(v);
    return out;
  }
  return j;
}

struct Globals {
  std::string config;
  std::optional<std::string> theta;
  std::optional<int> cutoff;
  std::optional<std::string> profile;
  std::optional<double> c;
  std::optional<std::string> out;
  std::optional<unsigned long> seed;
};

RunConfig resolve(const Globals& g) {
  RunConfig c = g.config.empty() ? RunConfig{} : load_run_config(g.config);
  if (g.theta) c.theta = Theta::parse(*g.theta);
  if (g.cutoff) c.cutoff = *g.cutoff;
  if (g.profile) apply_profile_spec(c.k, *g.profile);
  if (g.c) c.k.c = *g.c;
  if (g.out) c.out_dir = *g.out;
  if (g.seed) c.seed = *g.seed;
  if (c.cutoff < 1) throw ParameterError("N must be positive");
  return c;
}

std::optional<fs::path> out_path(const RunConfig& c, const std::string& name) {
  if (c.out_dir.empty()) return std::nullopt;
  fs::create_directories(c.out_dir);
  return fs::path(c.out_dir) / name;
}

void write_json(const RunConfig& c, const std::string& name, const json& j) {
  if (auto p = out_path(c, name)) {
    std::ofstream out(*p);
    out << fixed(j).dump(2) << '\n';
  }
}

void print_json(const json& j) { std::cout << fixed(j).dump(2) << '\n'; }

// --- symbolic commands ---

int cmd_symbols(const RunConfig& cfg) {
  const DiracSymbols a = dirac_square_symbols();
  const Parametrix& p = cached_parametrix();
  const SymbolExpr ev = even_part(p.b2);
  std::cout << "a2 =\n" << to_latex(a.a2) << "a1 =\n" << to_latex(a.a1) << "a0 =\n" << to_latex(a.a0);
  std::cout << "b0 =\n" << to_latex(p.b0) << "b1 (" << p.b1.size() << " words) =\n" << to_latex(p.b1);
  std::cout << "b2: " << p.b2.size() << " words, even part " << ev.size() << " words\n";
  std::cout << "b2 even, spin trace =\n" << to_latex(reduced_b2(Channel::plain));
  std::cout << "b2 even, chiral trace =\n" << to_latex(reduced_b2(Channel::chiral));
  write_json(cfg, "symbols.json",
             {{"a2", to_json(a.a2)},
              {"a1", to_json(a.a1)},
              {"a0", to_json(a.a0)},
              {"b0", to_json(p.b0)},
              {"b1", to_json(p.b1)},
              {"b2", to_json(p.b2)},
              {"b2_even", to_json(ev)},
              {"b2_even_plain", to_json(reduced_b2(Channel::plain))},
              {"b2_even_chiral", to_json(reduced_b2(Channel::chiral))}});
  return 0;
}

/// First word (in canonical order) whose coefficients differ, or nullopt.
std::optional<std::string> first_difference(const SymbolExpr& computed, const SymbolExpr& golden) {
  std::set<SymbolWord> words;
  for (const auto& [w, c] : computed.terms()) words.insert(w);
  for (const auto& [w, c] : golden.terms()) words.insert(w);
  for (const auto& w : words) {
    const Gaussian a = computed.coeff(w), b = golden.coeff(w);
    if (a != b)
      return word_latex(w) + " (computed " + to_string(a) + ", golden " + to_string(b) + ")";
  }
  return std::nullopt;
}

int cmd_verify_b2(const RunConfig&, const std::string& golden_dir) {
  int rc = 0;
  for (Channel ch : {Channel::plain, Channel::chiral}) {
    const std::string path = golden_dir + "/b2_even_" + channel_name(ch) + ".txt";
    std::ifstream in(path);
    if (!in) throw ParameterError("cannot open " + path);
    const SymbolExpr golden = parse_symbol_lines(in);
    const SymbolExpr computed = reduced_b2(ch);
    if (auto diff = first_difference(computed, golden)) {
      std::cout << channel_name(ch) << ": MISMATCH against " << path << "\n  first differing word: " << *diff << "\n";
      rc = 1;
    } else {
      std::cout << channel_name(ch) << ": " << computed.size() << " words match " << path << "\n";
    }
  }
  return rc;
}

int cmd_curvature(const RunConfig& cfg, bool chiral) {
  const Assembly a = assemble(chiral ? Channel::chiral : Channel::plain);
  std::cout << a.report();
  write_json(cfg, chiral ? "curvature_chiral.json" : "curvature_plain.json",
             {{"normalization", a.normalization.to_string()}, {"package", to_json(a.package)}, {"ok", a.ok}});
  return a.ok ? 0 : 1;
}

int cmd_gauss_bonnet(const RunConfig& cfg) {
  const GaussBonnet plain = gauss_bonnet(assemble(Channel::plain).package);
  const GaussBonnet chiral = gauss_bonnet(assemble(Channel::chiral).package);
  std::cout << "spin channel\n" << plain.to_string() << "chiral channel\n" << chiral.to_string();
  json cv = json::array();
  for (const auto& f : chiral.chiral_values) cv.push_back(f.to_string());
  write_json(cfg, "gauss_bonnet.json",
             {{"H", plain.residual.H.to_string()},
              {"H_d2", plain.residual.H2.to_string()},
              {"antisymmetrized", plain.residual.antisymmetrized.to_string()},
              {"plain_holds", plain.holds},
              {"chiral_values", cv},
              {"chiral_holds", chiral.holds}});
  return plain.holds && chiral.holds ? 0 : 1;
}

int cmd_classical(const RunConfig& cfg) {
  const ClassicalCheck c = classical_check(assemble(Channel::plain).package);
  std::cout << c.report() << (c.ok() ? "classical limit verified\n" : "classical limit FAILED\n");
  write_json(cfg, "classical.json",
             {{"integral", c.integral.to_string()}, {"curvature", c.curvature.to_string()}, {"ok", c.ok()}});
  return c.ok() ? 0 : 1;
}

// --- numerical lab ---

std::optional<TorusElement> weight_element(const std::string& name, const Theta& theta) {
  if (name.empty() || name == "1") return std::nullopt;
  const TorusElement u1 = TorusElement::u1(theta), u2 = TorusElement::u2(theta);
  if (name == "u1") return u1 + u1.star();
  if (name == "u2") return u2 + u2.star();
  if (name == "u1sq") return u1 * u1 + u1.star() * u1.star();
  throw ParameterError("unknown weight '" + name + "' (expected 1, u1, u2, u1sq)");
}

json config_summary(const RunConfig& c) {
  return {{"theta", theta_to_json(c.theta)}, {"N", c.cutoff}, {"eps", c.k.eps}, {"c", c.k.c}};
}

int cmd_spectrum(const RunConfig& cfg) {
  const GnsBasis basis(cfg.cutoff);
  const DiracMatrix D = build_dirac(cfg.positive_k(basis), basis);
  const SpectralData s = diagonalize(D);
  const double kernel_tol = HeatOptions{}.kernel_tol;
  int ker = 0;
  for (double l : s.eigenvalues)
    if (std::abs(l) < kernel_tol) ++ker;
  if (auto p = out_path(cfg, "spectrum.csv")) export_spectrum_csv(s.eigenvalues, p->string());
  print_json({{"config", config_summary(cfg)},
              {"dimension", s.eigenvalues.size()},
              {"hermiticity_defect", D.hermiticity_defect},
              {"k_min_eigenvalue", D.k_min_eigenvalue},
              {"spectral_asymmetry", spectral_asymmetry(s.eigenvalues)},
              {"dim_ker", ker},
              {"lambda_min", s.eigenvalues.front()},
              {"lambda_max", s.eigenvalues.back()}});
  return 0;
}

int cmd_heat(const RunConfig& cfg, bool chiral, const std::string& weight, bool right) {
  const GnsBasis basis(cfg.cutoff);
  const DiracMatrix D = build_dirac(cfg.positive_k(basis), basis);
  HeatOptions opt;
  opt.window = cfg.window;
  opt.weight.chiral = chiral;
  opt.weight.f = weight_element(weight, cfg.theta);
  opt.weight.right = right;
  opt.weight.interior_depth = cfg.interior_depth;
  const SpectralFit fit = heat_fit(D, opt);
  if (auto p = out_path(cfg, "heat.csv")) export_heat_csv(fit, p->string());
  const bool checked = !chiral && !opt.weight.f;
  const bool pass = !checked || std::abs(fit.c0) <= cfg.tol.c0;
  json j = to_json(fit);
  j["config"] = config_summary(cfg);
  j["chiral"] = chiral;
  j["weight"] = weight.empty() ? "1" : weight;
  j["weight_side"] = right ? "right" : "left";
  if (checked) {
    j["tolerance_c0"] = cfg.tol.c0;
    j["within_tolerance"] = pass;
  }
  print_json(j);
  write_json(cfg, "heat.json", j);
  return pass ? 0 : 1;
}

int cmd_zeta(const RunConfig& cfg) {
  const GnsBasis basis(cfg.cutoff);
  const TorusElement k = cfg.positive_k(basis);
  const DiracMatrix D = build_dirac(k, basis);
  HeatOptions opt;
  opt.window = cfg.window;
  const SpectralFit fit = heat_fit(D, opt);
  opt.weight.interior_depth = cfg.interior_depth;
  const ZetaZero z = zeta_at_zero(fit);
  // f acts on the side of k; a traceless left weight has no small-t expansion at all
  json pairing = json::array();
  const CurvaturePackage pkg = assemble(Channel::plain).package;
  const GnsBasis small(std::min(cfg.cutoff, 10));
  for (const std::string w : {"u1", "u1sq"}) {
    HeatOptions o = opt;
    o.weight.f = weight_element(w, cfg.theta);
    o.weight.right = true;
    const SpectralFit fw = heat_fit(D, o);
    const Complex tau = curvature_pairing(pkg, k, *o.weight.f, small);
    pairing.push_back({{"f", w}, {"c0", fw.c0}, {"error_bar", fw.error_bar}, {"tau_fR", tau.real()},
                       {"ratio", tau.real() == 0.0 ? 0.0 : fw.c0 / tau.real()},
                       {"ratio_times_2pi2", tau.real() == 0.0 ? 0.0 : 2.0 * std::numbers::pi * std::numbers::pi * fw.c0 / tau.real()}});
  }
  print_json({{"config", config_summary(cfg)},
              {"c0", fit.c0},
              {"error_bar", fit.error_bar},
              {"dim_ker", fit.dim_ker},
              {"zeta_0", z.value},
              {"flat_zeta_0", -2.0},
              {"heat_vs_pairing", pairing}});
  return 0;
}

int cmd_section4(const RunConfig& cfg) {
  const GnsBasis basis(cfg.cutoff);
  const Section4Values v = section4_functionals(cfg.positive_k(basis), basis);
  const TraceExpr two = leibniz_reduce(twobein_expr()), ros = leibniz_reduce(rosenberg_expr());
  std::cout << "two-bein after integration by parts: " << two.to_string() << (two.is_zero() ? "\n" : "")
            << "Rosenberg after integration by parts:\n" << ros.to_string();
  print_json({{"config", config_summary(cfg)},
              {"twobein_symbolic_zero", two.is_zero()},
              {"twobein_matrix_trace", v.twobein_matrix},
              {"twobein_torus_trace", v.twobein_interior},
              {"rosenberg_matrix_trace", v.rosenberg_matrix},
              {"rosenberg_torus_trace", v.rosenberg_interior},
              {"k_min_eigenvalue", v.min_eigenvalue}});
  return two.is_zero() && std::abs(v.twobein_interior) <= cfg.tol.section4 ? 0 : 1;
}

int cmd_oracle(const RunConfig& cfg, int points) {
  std::mt19937_64 rng(cfg.seed);
  const QuadratureSweep q = quadrature_sweep(points, rng);
  const LemmaSweep l = lemma_sweep(cfg.trials, rng);
  const bool pass = q.worst <= cfg.tol.quadrature && l.worst <= cfg.tol.lemma;
  print_json({{"quadrature",
               {{"descriptors", q.descriptors},
                {"points", q.points},
                {"worst_relative_error", q.worst},
                {"worst_descriptor", q.worst_descriptor},
                {"worst_at", {q.worst_s, q.worst_t}}}},
              {"lemma", {{"trials", l.trials}, {"worst_error", l.worst}}},
              {"pass", pass}});
  return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nctorus: curvature of the conformally rescaled noncommutative torus"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--config", g.config, "JSON run configuration")->check(CLI::ExistingFile);
  app.add_option("--theta", g.theta, "deformation parameter, rational (1/5) or decimal");
  app.add_option("--N", g.cutoff, "Fourier cutoff");
  app.add_option("--k-profile", g.profile, "k profile overrides, e.g. eps=0.2,c=1");
  app.add_option("--c", g.c, "constant part of k");
  app.add_option("--out", g.out, "directory for JSON/CSV output");
  app.add_option("--seed", g.seed, "random seed");

  auto* symbols = app.add_subcommand("symbols", "symbols of D^2 and the parametrix");
  auto* verify = app.add_subcommand("verify-b2", "compare the even part of b2 with the golden lists");
  std::string golden = data_dir() + "/golden";
  verify->add_option("--golden", golden, "directory with b2_even_plain.txt and b2_even_chiral.txt");
  auto* curvature = app.add_subcommand("curvature", "assemble and verify the curvature functions");
  bool chiral = false;
  curvature->add_flag("--chiral", chiral, "chiral channel");
  auto* gb = app.add_subcommand("gauss-bonnet", "trace reduction and the H(s) identity");
  auto* classical = app.add_subcommand("classical", "commutative limit");
  auto* spectrum = app.add_subcommand("spectrum", "spectrum of the truncated Dirac operator");
  auto* heat = app.add_subcommand("heat", "heat-trace fit");
  bool heat_chiral = false;
  std::string weight;
  bool right = false;
  heat->add_flag("--chiral", heat_chiral, "insert the grading");
  heat->add_option("--f", weight, "weight: 1, u1, u2, u1sq");
  heat->add_flag("--right", right, "weight acts by right multiplication (the side of k)");
  auto* zeta = app.add_subcommand("zeta", "zeta(0) from the heat fit and the heat/curvature ratio");
  auto* section4 = app.add_subcommand("section4", "Rosenberg and two-bein functionals");
  auto* oracle = app.add_subcommand("oracle", "quadrature and trace-identity sweeps");
  int points = 2;
  oracle->add_option("--points", points, "random (s,t) per descriptor");
  std::string save_path;
  auto* config = app.add_subcommand("config", "print the resolved configuration");
  config->add_option("--write", save_path, "also write it to this file");

  CLI11_PARSE(app, argc, argv);
  try {
    const RunConfig cfg = resolve(g);
    if (*symbols) return cmd_symbols(cfg);
    if (*verify) return cmd_verify_b2(cfg, golden);
    if (*curvature) return cmd_curvature(cfg, chiral);
    if (*gb) return cmd_gauss_bonnet(cfg);
    if (*classical) return cmd_classical(cfg);
    if (*spectrum) return cmd_spectrum(cfg);
    if (*heat) return cmd_heat(cfg, heat_chiral, weight, right);
    if (*zeta) return cmd_zeta(cfg);
    if (*section4) return cmd_section4(cfg);
    if (*oracle) return cmd_oracle(cfg, points);
    if (*config) {
      print_json(to_json(cfg));
      if (!save_path.empty()) save_run_config(cfg, save_path);
      return 0;
    }
  } catch (const PositivityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
