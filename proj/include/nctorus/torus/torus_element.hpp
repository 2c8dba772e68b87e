#pragma once

// Finite Fourier series sum a_mn U1^m U2^n on the noncommutative torus,
// normal ordered, with U1 U2 = q U2 U1 and q = exp(2 pi i theta).

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <utility>

#include <json.hpp>

#include "nctorus/core/errors.hpp"
#include "nctorus/core/rational.hpp"

namespace nct {

using Complex = std::complex<double>;

/// Deformation parameter. The exact value is kept when it is rational.
struct Theta {
  double value = 0.0;
  std::optional<Rational> exact;

  Theta() = default;
  Theta(double v) : value(v) {}  // NOLINT(implicit)
  Theta(const Rational& r) : value(r.get_d()), exact(r) {}

  static Theta parse(const std::string& text) {
    if (text.find_first_of(".eE") == std::string::npos) return Theta(parse_rational(text));
    try {
      return Theta(std::stod(text));
    } catch (const std::exception&) {
      throw ParseError("not a theta value: '" + text + "'");
    }
  }

  std::string to_string() const {
    if (exact) return exact->get_str();
    std::ostringstream os;
    os.precision(17);
    os << value;
    return os.str();
  }

  Complex q_pow(long n) const { return std::polar(1.0, 2.0 * std::numbers::pi * value * static_cast<double>(n)); }

  friend bool operator==(const Theta& a, const Theta& b) {
    if (a.exact && b.exact) return *a.exact == *b.exact;
    return a.value == b.value;
  }
};

/// Element of Q(i)[q, 1/q, tau]: exact coefficient ring. tau stands for 2 pi,
/// so derivations stay exact. conj(q) = 1/q, tau is real.
class ExactCoeff {
 public:
  using Key = std::pair<int, int>;  // (power of q, power of tau)

  ExactCoeff() = default;
  ExactCoeff(Gaussian g) {  // NOLINT(implicit)
    if (!g.is_zero()) terms_.emplace(Key{0, 0}, std::move(g));
  }
  ExactCoeff(long c) : ExactCoeff(Gaussian(c)) {}  // NOLINT(implicit)

  static ExactCoeff monomial(int qpow, int taupow, Gaussian c = 1) {
    ExactCoeff r;
    if (!c.is_zero()) r.terms_.emplace(Key{qpow, taupow}, std::move(c));
    return r;
  }
  static ExactCoeff q_pow(int n) { return monomial(n, 0); }
  static ExactCoeff two_pi_i() { return monomial(0, 1, Gaussian::i()); }

  const std::map<Key, Gaussian>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::optional<Gaussian> as_gaussian() const {
    if (terms_.empty()) return Gaussian();
    if (terms_.size() == 1 && terms_.begin()->first == Key{0, 0}) return terms_.begin()->second;
    return std::nullopt;
  }

  ExactCoeff conj() const {
    ExactCoeff r;
    for (const auto& [k, c] : terms_) r.terms_.emplace(Key{-k.first, k.second}, c.conj());
    return r;
  }
  ExactCoeff operator-() const {
    ExactCoeff r = *this;
    for (auto& [k, c] : r.terms_) c = -c;
    return r;
  }
  ExactCoeff& operator+=(const ExactCoeff& o) {
    for (const auto& [k, c] : o.terms_) add(k, c);
    return *this;
  }
  ExactCoeff& operator-=(const ExactCoeff& o) { return *this += -o; }
  friend ExactCoeff operator+(ExactCoeff a, const ExactCoeff& b) { return a += b; }
  friend ExactCoeff operator-(ExactCoeff a, const ExactCoeff& b) { return a -= b; }
  friend ExactCoeff operator*(const ExactCoeff& a, const ExactCoeff& b) {
    ExactCoeff r;
    for (const auto& [ka, ca] : a.terms_)
      for (const auto& [kb, cb] : b.terms_) r.add({ka.first + kb.first, ka.second + kb.second}, ca * cb);
    return r;
  }
  ExactCoeff& operator*=(const ExactCoeff& o) { return *this = *this * o; }
  friend bool operator==(const ExactCoeff& a, const ExactCoeff& b) { return a.terms_ == b.terms_; }

  Complex to_complex(const Theta& theta) const {
    Complex r = 0;
    for (const auto& [k, c] : terms_)
      r += Complex(c.re.get_d(), c.im.get_d()) * theta.q_pow(k.first) * std::pow(2.0 * std::numbers::pi, k.second);
    return r;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [k, c] : terms_) {
      if (!out.empty()) out += " + ";
      out += "(" + nct::to_string(c) + ")";
      if (k.first != 0) out += "*q^" + std::to_string(k.first);
      if (k.second != 0) out += "*tau^" + std::to_string(k.second);
    }
    return out;
  }

 private:
  void add(const Key& k, const Gaussian& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(k, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  std::map<Key, Gaussian> terms_;
};

namespace detail {

template <class C>
C q_phase(const Theta& theta, long n) {
  if constexpr (std::is_same_v<C, ExactCoeff>) {
    return ExactCoeff::q_pow(static_cast<int>(n));
  } else {
    return theta.q_pow(n);
  }
}

template <class C>
C two_pi_i_times(long m) {
  if constexpr (std::is_same_v<C, ExactCoeff>) {
    return ExactCoeff::monomial(0, 1, Gaussian(0, m));
  } else {
    return Complex(0.0, 2.0 * std::numbers::pi * static_cast<double>(m));
  }
}

inline bool coeff_is_zero(const ExactCoeff& c) { return c.is_zero(); }
inline bool coeff_is_zero(const Complex& c) { return c == 0.0; }
inline ExactCoeff coeff_conj(const ExactCoeff& c) { return c.conj(); }
inline Complex coeff_conj(const Complex& c) { return std::conj(c); }

}  // namespace detail

/// Finite Fourier series with coefficients in C (ExactCoeff or Complex).
template <class C>
class BasicTorusElement {
 public:
  using Mode = std::pair<int, int>;
  using Coeffs = std::map<Mode, C>;

  BasicTorusElement() = default;
  explicit BasicTorusElement(Theta theta) : theta_(std::move(theta)) {}
  BasicTorusElement(Theta theta, Coeffs coeffs) : theta_(std::move(theta)) {
    for (auto& [k, c] : coeffs) add(k, c);
  }

  static BasicTorusElement scalar(const Theta& theta, const C& c) { return BasicTorusElement(theta, {{{0, 0}, c}}); }
  static BasicTorusElement one(const Theta& theta) { return scalar(theta, C(1)); }
  static BasicTorusElement monomial(const Theta& theta, int m, int n, const C& c = C(1)) {
    return BasicTorusElement(theta, {{{m, n}, c}});
  }
  static BasicTorusElement u1(const Theta& theta) { return monomial(theta, 1, 0); }
  static BasicTorusElement u2(const Theta& theta) { return monomial(theta, 0, 1); }

  const Theta& theta() const { return theta_; }
  const Coeffs& coeffs() const { return coeffs_; }
  C coeff(int m, int n) const {
    auto it = coeffs_.find({m, n});
    return it == coeffs_.end() ? C(0) : it->second;
  }
  bool is_zero() const { return coeffs_.empty(); }

  /// Largest |m| or |n| among nonzero coefficients.
  int degree() const {
    int d = 0;
    for (const auto& [k, c] : coeffs_) d = std::max({d, std::abs(k.first), std::abs(k.second)});
    return d;
  }

  /// The state picking the (0,0) coefficient.
  C trace() const { return coeff(0, 0); }

  BasicTorusElement star() const {
    BasicTorusElement r(theta_);
    // (U1^m U2^n)* = U2^-n U1^-m = q^{-mn} U1^-m U2^-n
    for (const auto& [k, c] : coeffs_)
      r.add({-k.first, -k.second}, detail::coeff_conj(c) * detail::q_phase<C>(theta_, -static_cast<long>(k.first) * k.second));
    return r;
  }

  BasicTorusElement operator-() const {
    BasicTorusElement r = *this;
    for (auto& [k, c] : r.coeffs_) c = -c;
    return r;
  }
  BasicTorusElement& operator+=(const BasicTorusElement& o) {
    check_theta(o);
    for (const auto& [k, c] : o.coeffs_) add(k, c);
    return *this;
  }
  BasicTorusElement& operator-=(const BasicTorusElement& o) { return *this += -o; }
  friend BasicTorusElement operator+(BasicTorusElement a, const BasicTorusElement& b) { return a += b; }
  friend BasicTorusElement operator-(BasicTorusElement a, const BasicTorusElement& b) { return a -= b; }
  friend BasicTorusElement operator*(const C& s, BasicTorusElement a) {
    for (auto& [k, c] : a.coeffs_) c = s * c;
    a.prune();
    return a;
  }

  /// Twisted convolution: U1^a U2^b U1^c U2^d = q^{-bc} U1^{a+c} U2^{b+d}.
  friend BasicTorusElement operator*(const BasicTorusElement& x, const BasicTorusElement& y) {
    x.check_theta(y);
    BasicTorusElement r(x.theta_);
    for (const auto& [kx, cx] : x.coeffs_)
      for (const auto& [ky, cy] : y.coeffs_)
        r.add({kx.first + ky.first, kx.second + ky.second},
              cx * cy * detail::q_phase<C>(x.theta_, -static_cast<long>(kx.second) * ky.first));
    return r;
  }

  BasicTorusElement pow(int e) const {
    if (e < 0) throw ParameterError("negative power of a torus element");
    BasicTorusElement r = one(theta_);
    for (int i = 0; i < e; ++i) r = r * *this;
    return r;
  }

  friend bool operator==(const BasicTorusElement& a, const BasicTorusElement& b) {
    return a.theta_ == b.theta_ && a.coeffs_ == b.coeffs_;
  }

  void check_theta(const BasicTorusElement& o) const {
    if (!(theta_ == o.theta_)) throw ParameterError("torus elements have different theta");
  }

 private:
  void add(const Mode& k, const C& c) {
    if (detail::coeff_is_zero(c)) return;
    auto [it, inserted] = coeffs_.emplace(k, c);
    if (!inserted) {
      it->second += c;
      if (detail::coeff_is_zero(it->second)) coeffs_.erase(it);
    }
  }
  void prune() {
    for (auto it = coeffs_.begin(); it != coeffs_.end();)
      it = detail::coeff_is_zero(it->second) ? coeffs_.erase(it) : std::next(it);
  }

  Theta theta_;
  Coeffs coeffs_;
};

using ExactTorusElement = BasicTorusElement<ExactCoeff>;
using TorusElement = BasicTorusElement<Complex>;

/// delta_mu multiplies a_mn by 2 pi i m (mu = 1) or 2 pi i n (mu = 2).
template <class C>
BasicTorusElement<C> delta(int mu, const BasicTorusElement<C>& x) {
  if (mu != 1 && mu != 2) throw ParameterError("derivation index must be 1 or 2");
  typename BasicTorusElement<C>::Coeffs out;
  for (const auto& [k, c] : x.coeffs()) out.emplace(k, detail::two_pi_i_times<C>(mu == 1 ? k.first : k.second) * c);
  return BasicTorusElement<C>(x.theta(), out);
}

inline TorusElement to_numeric(const ExactTorusElement& x) {
  TorusElement::Coeffs out;
  for (const auto& [k, c] : x.coeffs()) out.emplace(k, c.to_complex(x.theta()));
  return TorusElement(x.theta(), out);
}

/// Largest coefficient deviation between x and x*.
inline double self_adjoint_defect(const TorusElement& x) {
  TorusElement d = x - x.star();
  double worst = 0.0;
  for (const auto& [k, c] : d.coeffs()) worst = std::max(worst, std::abs(c));
  return worst;
}

/// (x + x*)/2
inline TorusElement self_adjoint_part(const TorusElement& x) { return Complex(0.5) * (x + x.star()); }

// JSON: {"theta": "1/5" | 0.2, "coeffs": [{"m","n","re","im"}]}

inline nlohmann::json theta_to_json(const Theta& t) {
  if (t.exact) return t.exact->get_str();
  return t.value;
}

inline Theta theta_from_json(const nlohmann::json& j) {
  if (j.is_string()) return Theta::parse(j.get<std::string>());
  if (j.is_number()) return Theta(j.get<double>());
  throw ParseError("theta must be a number or a rational string");
}

inline nlohmann::json to_json(const TorusElement& x) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& [k, c] : x.coeffs())
    coeffs.push_back({{"m", k.first}, {"n", k.second}, {"re", c.real()}, {"im", c.imag()}});
  return {{"theta", theta_to_json(x.theta())}, {"coeffs", coeffs}};
}

/// Exact elements with plain Gaussian coefficients keep rational strings; anything
/// involving q or tau is written numerically.
inline nlohmann::json to_json(const ExactTorusElement& x) {
  for (const auto& [k, c] : x.coeffs())
    if (!c.as_gaussian()) return to_json(to_numeric(x));
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& [k, c] : x.coeffs()) {
    Gaussian g = *c.as_gaussian();
    coeffs.push_back({{"m", k.first}, {"n", k.second}, {"re", g.re.get_str()}, {"im", g.im.get_str()}});
  }
  return {{"theta", theta_to_json(x.theta())}, {"coeffs", coeffs}};
}

inline TorusElement torus_element_from_json(const nlohmann::json& j) {
  Theta theta = theta_from_json(j.at("theta"));
  TorusElement::Coeffs coeffs;
  auto number = [](const nlohmann::json& v) {
    if (v.is_string()) return parse_rational(v.get<std::string>()).get_d();
    return v.get<double>();
  };
  for (const auto& e : j.at("coeffs")) {
    double im = e.contains("im") ? number(e.at("im")) : 0.0;
    coeffs[{e.at("m").get<int>(), e.at("n").get<int>()}] += Complex(number(e.at("re")), im);
  }
  return TorusElement(theta, coeffs);
}

}  // namespace nct
