#pragma once

// Exact-rational truncated even power series in the normal-form defining
// function r, with coefficients that are polynomials in the scalar boundary
// invariants J, |A|^2, |E|^2 and Lap J.

#include <array>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace hkcce::jets {

using Rational = boost::multiprecision::cpp_rational;

/// Serializes as "p/q" (always with a denominator).
std::string to_string(const Rational& q);
Rational parse_rational(const std::string& s);

enum class Symbol : int { J = 0, A2 = 1, E2 = 2, LapJ = 3 };
inline constexpr int kSymbolCount = 4;
const char* symbol_name(Symbol s);

using Monomial = std::array<int, kSymbolCount>;

class Poly {
 public:
  Poly() = default;
  Poly(const Rational& c);  // NOLINT: constants convert implicitly
  Poly(long c) : Poly(Rational(c)) {}
  Poly(int c) : Poly(Rational(c)) {}

  static Poly symbol(Symbol s, int power = 1);
  static Poly monomial(const Monomial& m, const Rational& c);

  const std::map<Monomial, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Coefficient of a monomial (zero when absent).
  Rational coeff(const Monomial& m) const;
  Rational constant_term() const { return coeff(Monomial{}); }
  bool is_constant() const;
  bool contains(Symbol s) const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Rational& a);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(Poly a) { return a *= Rational(-1); }
  friend Poly operator*(Poly a, const Rational& s) { return a *= s; }
  friend Poly operator*(const Rational& s, Poly a) { return a *= s; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }

  /// Replaces every occurrence of `s` by `value`.
  Poly substitute(Symbol s, const Poly& value) const;
  /// Evaluates at rational values of all four symbols.
  Rational evaluate(const std::array<Rational, kSymbolCount>& values) const;

  std::string to_string() const;

 private:
  void add_term(const Monomial& m, const Rational& c);
  std::map<Monomial, Rational> terms_;
};

class JetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Truncated series c0 + c1 r^2 + c2 r^4 + ..., up to r^order (order even, <= 8).
class Jet {
 public:
  explicit Jet(int order);
  Jet(int order, std::vector<Poly> coeffs);

  int order() const { return order_; }
  std::size_t size() const { return coeffs_.size(); }
  /// Coefficient of r^{2j}.
  const Poly& operator[](std::size_t j) const { return coeffs_.at(j); }
  Poly& operator[](std::size_t j) { return coeffs_.at(j); }
  const std::vector<Poly>& coeffs() const { return coeffs_; }

  /// Result of mixed-order arithmetic is truncated to the lower order.
  friend Jet operator+(const Jet& a, const Jet& b);
  friend Jet operator-(const Jet& a, const Jet& b);
  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator*(const Jet& a, const Rational& s);
  friend bool operator==(const Jet& a, const Jet& b) { return a.order_ == b.order_ && a.coeffs_ == b.coeffs_; }

  /// Multiplicative inverse; the constant coefficient must be exactly 1.
  Jet inverse() const;
  /// exp of a jet with vanishing constant term.
  Jet exp() const;
  /// log of a jet with unit constant term.
  Jet log() const;
  /// Euler operator r d/dr (multiplies the r^{2j} coefficient by 2j).
  Jet euler() const;
  /// Multiplies the r^{2j} coefficient by w[j].
  Jet weighted(const std::vector<Rational>& w) const;
  Jet substitute(Symbol s, const Poly& value) const;

  std::string to_string() const;

 private:
  int order_;
  std::vector<Poly> coeffs_;
};

enum class JetOp { Add, Mul, InvertUnitLeading, Scale };

/// Dispatches one series operation; `b` is ignored by InvertUnitLeading,
/// and Scale multiplies `a` by the constant term of `b[0]`.
Jet jet_combine(const Jet& a, const Jet& b, JetOp op);

/// Linear trace data of the normal-form metric g_r = g + r^2 g2 + r^4 g4.
struct TraceInputs {
  Poly tr_g2;     // tr g2 = -J
  Poly tr_g2_sq;  // tr(g2 g2) = |A|^2
  Poly tr_g4;     // tr g4 = |A|^2 / 4
};

TraceInputs default_trace_inputs();

struct NormalFormJets {
  int n = 0;
  Jet det_jet{4};  // sqrt(det g_r / det g)
  Jet h_jet{4};    // H_r for the level sets of r
  Jet v_jet{4};    // r V
  Poly v4;
};

/// tr log(g^{-1} g_r) as a jet, from traces only.
Jet trace_log_jet(const TraceInputs& tr);

/// Normal-form jets derived from trace data: det_jet = exp(tr log / 2),
/// h_jet = n - (1/2) r d/dr (tr log); v_jet carries the closed-form v4. n >= 5.
NormalFormJets expand_normal_form(int n);
NormalFormJets expand_normal_form(int n, const TraceInputs& tr);

/// The same three jets written with their closed-form coefficients.
NormalFormJets closed_form_normal_form(int n);

/// v4 = (Lap J - J^2 + n |A|^2) / (8 n (n-2)).
Poly lee_v4(int n);

/// Mean curvature of r-level sets rebuilt from n - (r/2) tr(g_r^{-1} d_r g_r).
Jet mean_curvature_from_traces(int n, const TraceInputs& tr);

/// A linear combination of boundary integrals of reduced monomials in J and
/// |E|^2; the empty monomial stands for Vol(M).
class IntegralClass {
 public:
  IntegralClass() = default;
  const std::map<Monomial, Rational>& terms() const { return terms_; }
  Rational coeff(const Monomial& m) const;
  Rational vol() const { return coeff(Monomial{}); }
  Rational int_J() const { return coeff(Monomial{1, 0, 0, 0}); }
  Rational int_J2() const { return coeff(Monomial{2, 0, 0, 0}); }
  Rational int_E2() const { return coeff(Monomial{0, 0, 1, 0}); }
  bool is_zero() const { return terms_.empty(); }

  IntegralClass& operator+=(const IntegralClass& o);
  IntegralClass& operator*=(const Rational& s);
  friend IntegralClass operator+(IntegralClass a, const IntegralClass& b) { return a += b; }
  friend IntegralClass operator-(IntegralClass a, IntegralClass b) { return a += (b *= Rational(-1)); }
  friend IntegralClass operator*(IntegralClass a, const Rational& s) { return a *= s; }
  friend bool operator==(const IntegralClass& a, const IntegralClass& b) { return a.terms_ == b.terms_; }

  void add(const Monomial& m, const Rational& c);
  std::string to_string() const;

 private:
  std::map<Monomial, Rational> terms_;
};

class UnsupportedIntegralIdentity : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Integrates a pointwise polynomial over a closed Einstein-type boundary:
/// drops a bare Lap J, then rewrites |A|^2 = |E|^2 / (n-2)^2 + J^2 / n.
IntegralClass boundary_integral(const Poly& p, int n);

struct IdentityCheck {
  std::string name;
  bool pass = false;
  std::string lhs;
  std::string rhs;
};

struct Prop21Certificate {
  int n = 0;
  Poly alpha;
  IntegralClass alpha1, alpha2, beta1, beta2;
  /// (alpha2 - beta2); the r^4 deviation coefficient is this divided by Vol(M).
  IntegralClass beta;
  std::vector<IdentityCheck> checks;
  bool all_pass() const;
};

Prop21Certificate verify_prop21(int n);

}  // namespace hkcce::jets
