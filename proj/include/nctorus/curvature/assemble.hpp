#pragma once

// b2 -> even part -> spinor trace -> descriptors -> closed forms, grouped by operand tag,
// then one normalization constant per channel.

#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "nctorus/core/expr_parser.hpp"
#include "nctorus/curvature/package.hpp"
#include "nctorus/rearrangement/closed_form.hpp"
#include "nctorus/symbol/calculus.hpp"

namespace nct {

inline std::string data_dir() {
  if (const char* env = std::getenv("NCTORUS_DATA_DIR")) return env;
#ifdef NCTORUS_DATA_DIR
  return NCTORUS_DATA_DIR;
#else
  return "data";
#endif
}

inline const Parametrix& cached_parametrix() {
  static const Parametrix p = parametrix(dirac_square_symbols());
  return p;
}

/// even part of b2 after the spinor trace of the given channel
inline SymbolExpr reduced_b2(Channel ch) { return spinor_reduce(even_part(cached_parametrix().b2), ch == Channel::chiral); }

/// Closed form of one word, with the product tags renamed to a function of s.
inline std::pair<OperandTag, ModularFunction> integrate_word(const SymbolWord& w, const Gaussian& c) {
  const bool adjacent = w.letters.size() == 2 && w.blocks[1].is_unit();
  const OperandTag tag = classify(w.letters, adjacent);
  ModularFunction f = eval_closed(describe(w, c));
  if (tag == OperandTag::d1_sq || tag == OperandTag::d2_sq) f = f.rename_t_to_s();
  return {tag, f};
}

/// Unnormalized channel sums.
inline std::map<OperandTag, ModularFunction> raw_channels(const SymbolExpr& reduced) {
  std::map<OperandTag, ModularFunction> out;
  for (const auto& [w, c] : reduced.terms()) {
    auto [tag, f] = integrate_word(w, c);
    auto it = out.find(tag);
    if (it == out.end())
      out.emplace(tag, f);
    else
      it->second += f;
  }
  return out;
}

/// A printed function with its name.
struct PrintedFunction {
  std::string name;
  Channel channel;
  OperandTag tag;
  ModularFunction f;
};

/// Reads the "name | channel | operands | k power | scalar | numerator | denominator" table.
/// Rows of the "trace" channel are returned with channel plain.
inline std::vector<PrintedFunction> load_printed_functions(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::vector<PrintedFunction> out;
  std::string line;
  auto trim = [](std::string s) {
    const auto a = s.find_first_not_of(" \t");
    const auto b = s.find_last_not_of(" \t");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
  };
  while (std::getline(in, line)) {
    if (trim(line).empty() || trim(line)[0] == '#') continue;
    std::vector<std::string> cols;
    std::stringstream ss(line);
    std::string col;
    while (std::getline(ss, col, '|')) cols.push_back(trim(col));
    if (cols.size() != 7) throw ParseError("bad row: " + line);
    const OperandTag tag = tag_from_name(cols[2]);
    const int kpow = std::stoi(cols[3]);
    const RationalFunction value =
        RationalFunction(parse_rational(cols[4])) * parse_rational_function(cols[5]) / parse_rational_function(cols[6]);
    ModularFunction f(kpow, 1, value, tag_operands(tag));
    out.push_back({cols[0], cols[1] == "chiral" ? Channel::chiral : Channel::plain, tag, f});
  }
  return out;
}

inline std::vector<PrintedFunction> printed_functions() { return load_printed_functions(data_dir() + "/golden/modular_functions.txt"); }

inline const PrintedFunction& printed(const std::string& name) {
  static const std::vector<PrintedFunction> all = printed_functions();
  for (const auto& p : all)
    if (p.name == name) return p;
  throw ParseError("no printed function " + name);
}

/// c * i^ipow
struct Normalization {
  Rational c = 1;
  int ipow = 0;
  std::string to_string() const {
    Rational v = ipow >= 2 ? Rational(-c) : c;
    if (ipow % 2 == 0) return v.get_str();
    if (abs(v) == 1) return v < 0 ? "-i" : "i";
    return v.get_str() + "i";
  }
};

/// The constant N with N * raw = target, if one exists.
inline std::optional<Normalization> ratio(const ModularFunction& target, const ModularFunction& raw) {
  if (raw.is_zero() || target.is_zero()) return std::nullopt;
  if (raw.k_prefactor() != target.k_prefactor() || raw.pi_power() != target.pi_power()) return std::nullopt;
  const auto q = (target.value() / raw.value()).constant();
  if (!q) return std::nullopt;
  return Normalization{*q, ((target.ipow() - raw.ipow()) % 4 + 4) % 4};
}

struct ChannelCheck {
  std::string name;
  OperandTag tag;
  ModularFunction computed;
  ModularFunction expected;
  bool match = false;
  /// computed - expected, as text
  std::string residual;
};

struct Assembly {
  CurvaturePackage package;
  Normalization normalization;
  std::vector<ChannelCheck> checks;
  bool ok = true;

  std::string report() const {
    std::ostringstream os;
    os << "channel " << channel_name(package.channel) << ", normalization " << normalization.to_string() << "\n";
    for (const auto& c : checks) {
      os << (c.match ? "[ok]   " : "[FAIL] ") << c.name << " (" << tag_name(c.tag) << ")\n"
         << "  computed: " << c.computed.to_string() << "\n"
         << "  printed:  " << c.expected.to_string() << "\n";
      if (!c.match) os << "  residual: " << c.residual << "\n";
    }
    os << (ok ? "all channels match\n" : "verification failed\n");
    return os.str();
  }
};

inline Assembly assemble(Channel ch) {
  const std::vector<std::pair<std::string, OperandTag>> plain = {{"F11", OperandTag::d1_d1}, {"F22", OperandTag::d2_d2},
                                                                 {"F11'", OperandTag::d1_sq}, {"F22'", OperandTag::d2_sq},
                                                                 {"F1", OperandTag::d11},     {"F2", OperandTag::d22}};
  const std::vector<std::pair<std::string, OperandTag>> chiral = {
      {"G12", OperandTag::d1_d2}, {"G21", OperandTag::d2_d1}, {"G", OperandTag::d12}};
  const auto& names = ch == Channel::plain ? plain : chiral;
  const OperandTag anchor = ch == Channel::plain ? OperandTag::d11 : OperandTag::d12;
  const std::string anchor_name = ch == Channel::plain ? "F1" : "G";

  auto raw = raw_channels(reduced_b2(ch));
  Assembly a;
  a.package.channel = ch;
  auto anchor_raw = raw.find(anchor);
  if (anchor_raw == raw.end()) throw ShapeError("anchor channel missing from b2");
  auto n = ratio(printed(anchor_name).f, anchor_raw->second);
  if (!n) throw ShapeError("anchor channel is not proportional to the printed function");
  a.normalization = *n;

  for (const auto& [tag, f] : raw)
    if (std::none_of(names.begin(), names.end(), [&](const auto& p) { return p.second == tag; })) {
      a.ok = false;
      a.checks.push_back({"unexpected", tag, f, ModularFunction::zero(f.k_prefactor(), f.variables()), false, f.to_string()});
    }
  for (const auto& [name, tag] : names) {
    const ModularFunction& expected = printed(name).f;
    auto it = raw.find(tag);
    ModularFunction computed = it == raw.end() ? ModularFunction::zero(expected.k_prefactor(), tag_operands(tag))
                                               : it->second.scaled(a.normalization.c, a.normalization.ipow);
    ChannelCheck c{name, tag, computed, expected, false, ""};
    c.match = computed == expected;
    if (!c.match) {
      a.ok = false;
      c.residual = computed.k_prefactor() == expected.k_prefactor() && computed.ipow() == expected.ipow()
                       ? (computed - expected).to_string()
                       : "prefactor mismatch";
    }
    a.checks.push_back(c);
    a.package.entries.push_back({tag, computed});
  }
  return a;
}

}  // namespace nct
