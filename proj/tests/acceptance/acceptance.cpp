// Acceptance suite: nctorus_acceptance [n ...] [--part twobein|rosenberg]
// Without arguments all criteria run. Exit status is nonzero if any selected criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <string>

#include "nctorus/nctorus.hpp"
#include "nctorus/oracle.hpp"

using namespace nct;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

const RationalFunction S = RationalFunction::s();
const RunConfig kConfig;

SymbolExpr golden(const std::string& name) {
  std::ifstream in(data_dir() + "/golden/" + name);
  if (!in) throw ParameterError("missing golden file " + name);
  return parse_symbol_lines(in);
}

Outcome c1() {
  const SymbolExpr plain = reduced_b2(Channel::plain), chiral = reduced_b2(Channel::chiral);
  const bool p = plain == golden("b2_even_plain.txt");
  const bool c = chiral == golden("b2_even_chiral.txt");
  const SymbolExpr w = parse_symbol_expr("+ 8 k^5 b_0^3 \\delta_2(k) b_0 \\delta_2(k) k b_0 \\xi_2^6");
  const auto& [word, coeff] = *w.terms().begin();
  const bool example = plain.coeff(word) == coeff;
  return {p && c && example, std::to_string(plain.size()) + " spin words " + (p ? "match" : "DIFFER") + ", " +
                                 std::to_string(chiral.size()) + " chiral words " + (c ? "match" : "DIFFER") +
                                 ", sample word coefficient " + to_string(plain.coeff(word))};
}

Outcome c2() {
  const Assembly a = assemble(Channel::plain), g = assemble(Channel::chiral);
  std::set<std::string> names;
  for (const auto* x : {&a, &g})
    for (const auto& c : x->checks)
      if (c.match) names.insert(c.name);
  const bool all = names == std::set<std::string>{"F11", "F22", "F11'", "F22'", "F1", "F2", "G12", "G21", "G"};
  return {a.ok && g.ok && all, "normalization " + a.normalization.to_string() + " (spin), " +
                                   g.normalization.to_string() + " (chiral), " + std::to_string(names.size()) +
                                   "/9 printed functions reproduced"};
}

Outcome c3() {
  const GaussBonnet plain = gauss_bonnet(assemble(Channel::plain).package);
  const GaussBonnet chiral = gauss_bonnet(assemble(Channel::chiral).package);
  const ModularFunction expected(-3, 1, RationalFunction(make_rational(1, 3)) * (RationalFunction(1) - S) /
                                            (S * (S + 1).pow(2)), 1);
  const bool h = plain.residual.H == expected;
  const RationalFunction v = plain.residual.H.value();
  const bool anti = (S.pow(3) * v + v.compose(RationalFunction(1) / S, 1)).is_zero();
  bool zeros = chiral.chiral_values.size() == 3;
  for (const auto& z : chiral.chiral_values) zeros = zeros && z.is_zero();
  return {h && anti && zeros && plain.holds && chiral.holds,
          "H(s) = " + plain.residual.H.to_string() + (anti ? ", s^3H(s)+H(1/s) = 0" : ", antisymmetry FAILS") +
              (zeros ? ", G12(s,1) = G21(s,1) = G(1) = 0" : ", chiral values nonzero")};
}

Outcome c4() {
  const ClassicalCheck c = classical_check(assemble(Channel::plain).package);
  return {c.ok(), std::string("collapse ") + (c.plain_golden && c.chiral_golden ? "matches" : "DIFFERS") +
                      ", integral " + (c.integral_ok ? "ok" : "WRONG") + ", curvature " +
                      (c.curvature_ok ? "ok" : "WRONG") + ", chiral integral " + (c.chiral_zero ? "0" : "NONZERO")};
}

Outcome c5() {
  std::mt19937_64 rng(kConfig.seed);
  const QuadratureSweep q = quadrature_sweep(20, rng);
  return {q.worst <= kConfig.tol.quadrature,
          std::to_string(q.descriptors) + " descriptors, " + std::to_string(q.points) + " points, worst relative error " +
              fmt("%.2e", q.worst) + " (" + q.worst_descriptor + ")"};
}

Outcome c6() {
  std::mt19937_64 rng(kConfig.seed + 1);
  const LemmaSweep l = lemma_sweep(100, rng);
  return {l.worst <= kConfig.tol.lemma, std::to_string(l.trials) + " trials, worst error " + fmt("%.2e", l.worst)};
}

SpectralFit fit_at(const Theta& theta, double eps, int N) {
  RunConfig c;
  c.theta = theta;
  c.k.eps = eps;
  c.cutoff = N;
  const GnsBasis basis(N);
  return heat_fit(build_dirac(c.positive_k(basis), basis));
}

Outcome c7() {
  bool pass = true;
  std::string detail;
  for (const auto& [name, theta] : {std::pair<std::string, Theta>{"1/5", Theta(make_rational(1, 5))},
                                    {"golden", Theta((std::sqrt(5.0) - 1.0) / 2.0)}}) {
    const double a = fit_at(theta, kConfig.k.eps, 24).c0, b = fit_at(theta, kConfig.k.eps, 32).c0;
    pass = pass && std::abs(a) <= kConfig.tol.c0 && std::abs(b) < std::abs(a);
    detail += "theta=" + name + ": c0(24) " + fmt("%.2e", a) + ", c0(32) " + fmt("%.2e", b) + "; ";
  }
  const SpectralFit flat = fit_at(Theta(make_rational(1, 5)), 0.0, 24);
  const double rel = std::abs(flat.c_minus1 * 2.0 * std::numbers::pi - 1.0);
  pass = pass && rel <= kConfig.tol.c_minus1_rel && std::abs(flat.c0) <= kConfig.tol.c0_flat;
  detail += "flat: c-1 rel. err " + fmt("%.1e", rel) + ", c0 " + fmt("%.2e", flat.c0);
  return {pass, detail};
}

Outcome c8() {
  std::mt19937_64 rng(kConfig.seed + 2);
  const GnsBasis basis(12);
  const CurvaturePackage plain = assemble(Channel::plain).package, chiral = assemble(Channel::chiral).package;
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    const TorusElement k = random_positive_k(kConfig.theta, rng);
    for (const auto* p : {&plain, &chiral}) {
      const CurvatureTrace r = numeric_curvature_trace(*p, k, basis);
      worst = std::max(worst, r.relative());
    }
  }
  return {worst <= kConfig.tol.curvature_trace, "10 random k at N=12, worst relative trace " + fmt("%.2e", worst)};
}

Outcome c9_twobein() {
  std::mt19937_64 rng(kConfig.seed + 3);
  const GnsBasis basis(12);
  double worst = 0.0;
  for (int i = 0; i < 10; ++i)
    worst = std::max(worst, std::abs(section4_functionals(random_positive_k(kConfig.theta, rng), basis).twobein_interior));
  const bool symbolic = leibniz_reduce(twobein_expr()).is_zero();
  return {symbolic && worst <= kConfig.tol.section4,
          std::string("two-bein: symbolic ") + (symbolic ? "0" : "NONZERO") + ", worst numeric " + fmt("%.2e", worst)};
}

Outcome c9_rosenberg() {
  const GnsBasis basis(16);
  const Section4Values v = section4_functionals(kConfig.positive_k(basis), basis);
  return {std::abs(v.rosenberg_interior) > 1e-4, "Rosenberg (eps=0.2, N=16): torus trace " +
                                                    fmt("%.2e", v.rosenberg_interior) + ", truncated matrix trace " +
                                                    fmt("%.2e", v.rosenberg_matrix) + " (boundary term)"};
}

Outcome c9(const std::string& part) {
  if (part == "twobein") return c9_twobein();
  if (part == "rosenberg") return c9_rosenberg();
  const Outcome a = c9_twobein(), b = c9_rosenberg();
  return {a.pass && b.pass, a.detail + "; " + b.detail};
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> selected;
  std::string part;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--part" && i + 1 < argc)
      part = argv[++i];
    else
      selected.insert(std::stoi(a));
  }
  if (selected.empty()) selected = {1, 2, 3, 4, 5, 6, 7, 8, 9};

  const std::function<Outcome()> criteria[] = {c1, c2, c3, c4, c5, c6, c7, c8, [&] { return c9(part); }};
  bool all = true;
  for (int n : selected) {
    if (n < 1 || n > 9) {
      std::cerr << "no criterion " << n << "\n";
      return 2;
    }
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[n - 1]();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << "criterion " << n << (part.empty() || n != 9 ? "" : " (" + part + ")") << ": "
              << (o.pass ? "PASS" : "FAIL") << "  [" << fmt("%.1f", secs) << " s]  " << o.detail << std::endl;
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
