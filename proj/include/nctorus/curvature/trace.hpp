#pragma once

// Under the trace, t(k^p F(D1, D1 D2)(X Y)) = t(k^p F(D,1)(X) Y) and t(k^p F(D)(X)) = F(1) t(k^p X).
// What is left of a package is one function per first-order channel, paired as t(k^w H(D)(X) X).

#include <sstream>
#include <string>

#include "nctorus/curvature/package.hpp"

namespace nct {

struct TraceResidual {
  /// d1 channel: F11(s,1) + F11'(1) + Leibniz image of the d11 entry
  ModularFunction H;
  /// d2 channel, same construction
  ModularFunction H2;
  int weight = -3;
  bool vanishes = false;
  /// H(s) + s^w H(1/s); zero iff the trace pairing vanishes for every X
  ModularFunction antisymmetrized;
  ModularFunction antisymmetrized2;

  std::string to_string() const {
    std::ostringstream os;
    os << "H(s) = " << H.to_string() << "\n"
       << "d2 channel: " << H2.to_string() << "\n"
       << "H(s) + s^" << weight << " H(1/s) = " << antisymmetrized.to_string() << "\n"
       << (vanishes ? "vanishes" : "does not vanish") << "\n";
    return os.str();
  }
};

/// t(k^p X_mumu) = -t(delta(k^p) X) rewritten as t(k^{p-1} G(D)(X) X).
/// For p < 0 the |p| terms of delta(k^p) give G(s) = sum_j s^{-min(j, |p|+1-j)}; p = 0 gives 0.
inline RationalFunction leibniz_weight(int p) {
  if (p > 0) throw ShapeError("Leibniz rewrite implemented for k^p with p <= 0");
  RationalFunction g;
  const int n = -p;
  for (int j = 1; j <= n; ++j) g += RationalFunction::s().pow(-std::min(j, n + 1 - j));
  return g;
}

/// H(s) + s^w H(1/s)
inline ModularFunction antisymmetrize(const ModularFunction& h, int w) {
  const RationalFunction inv = RationalFunction(1) / RationalFunction::s();
  return h + h.compose(inv, RationalFunction(1)).times(RationalFunction::s().pow(w));
}

namespace detail {

inline ModularFunction channel_residual(const CurvaturePackage& p, OperandTag pair, OperandTag square, OperandTag second) {
  const ModularFunction* fp = p.find(pair);
  const ModularFunction* fs = p.find(square);
  const ModularFunction* f2 = p.find(second);
  int w = fp ? fp->k_prefactor() : (fs ? fs->k_prefactor() : 0);
  ModularFunction h = ModularFunction::zero(w, 1);
  if (fp && !fp->is_zero()) h += fp->substitute_t(1);
  if (fs && !fs->is_zero()) h += fs->substitute_s(1);
  if (f2 && !f2->is_zero()) {
    const int q = f2->k_prefactor();
    const ModularFunction c = f2->substitute_s(1);
    ModularFunction moved(q - 1, c.pi_power(), c.value() * leibniz_weight(q), 1, c.ipow());
    h += moved;
  }
  return h;
}

}  // namespace detail

inline TraceResidual trace_reduce(const CurvaturePackage& p) {
  if (p.channel != Channel::plain) throw ShapeError("trace_reduce expects the plain channel");
  for (const auto& e : p.entries)
    if (e.tag == OperandTag::d1_d2 || e.tag == OperandTag::d2_d1 || e.tag == OperandTag::d12)
      throw ShapeError(std::string("unexpected operand tag in plain package: ") + tag_name(e.tag));
  TraceResidual r;
  r.H = detail::channel_residual(p, OperandTag::d1_d1, OperandTag::d1_sq, OperandTag::d11);
  r.H2 = detail::channel_residual(p, OperandTag::d2_d2, OperandTag::d2_sq, OperandTag::d22);
  r.weight = r.H.k_prefactor();
  r.antisymmetrized = antisymmetrize(r.H, r.weight);
  r.antisymmetrized2 = antisymmetrize(r.H2, r.H2.k_prefactor());
  r.vanishes = r.antisymmetrized.is_zero() && r.antisymmetrized2.is_zero();
  return r;
}

struct GaussBonnet {
  bool holds = false;
  TraceResidual residual;  // plain channel only
  /// chiral: G12(s,1), G21(s,1), G(1)
  std::vector<ModularFunction> chiral_values;
  std::string to_string() const {
    std::ostringstream os;
    if (chiral_values.empty()) {
      os << residual.to_string();
    } else {
      const char* names[] = {"G12(s,1)", "G21(s,1)", "G(1)"};
      for (std::size_t i = 0; i < chiral_values.size(); ++i)
        os << names[i] << " = " << chiral_values[i].to_string() << "\n";
    }
    os << "Gauss-Bonnet " << (holds ? "holds" : "fails") << "\n";
    return os.str();
  }
};

inline GaussBonnet gauss_bonnet(const CurvaturePackage& p) {
  GaussBonnet g;
  if (p.channel == Channel::plain) {
    g.residual = trace_reduce(p);
    g.holds = g.residual.vanishes;
    return g;
  }
  auto value = [&](OperandTag t) {
    const ModularFunction* f = p.find(t);
    if (!f) return ModularFunction::zero(0, 1);
    return tag_operands(t) == 2 ? f->substitute_t(1) : f->substitute_s(1);
  };
  g.chiral_values = {value(OperandTag::d1_d2), value(OperandTag::d2_d1), value(OperandTag::d12)};
  g.holds = std::all_of(g.chiral_values.begin(), g.chiral_values.end(), [](const auto& f) { return f.is_zero(); });
  return g;
}

}  // namespace nct
