#include "hkcce/jet_algebra.hpp"

#include <sstream>

namespace hkcce::jets {

std::string to_string(const Rational& q) {
  std::ostringstream os;
  os << boost::multiprecision::numerator(q) << "/" << boost::multiprecision::denominator(q);
  return os.str();
}

Rational parse_rational(const std::string& s) {
  const auto slash = s.find('/');
  using boost::multiprecision::cpp_int;
  if (slash == std::string::npos) return Rational(cpp_int(s));
  return Rational(cpp_int(s.substr(0, slash)), cpp_int(s.substr(slash + 1)));
}

const char* symbol_name(Symbol s) {
  switch (s) {
    case Symbol::J: return "J";
    case Symbol::A2: return "A2";
    case Symbol::E2: return "E2";
    case Symbol::LapJ: return "LapJ";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Poly

Poly::Poly(const Rational& c) {
  if (c != 0) terms_[Monomial{}] = c;
}

Poly Poly::symbol(Symbol s, int power) {
  Monomial m{};
  m[static_cast<int>(s)] = power;
  return monomial(m, Rational(1));
}

Poly Poly::monomial(const Monomial& m, const Rational& c) {
  for (int e : m)
    if (e < 0) throw JetError("negative monomial exponent");
  Poly p;
  p.add_term(m, c);
  return p;
}

void Poly::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Rational Poly::coeff(const Monomial& m) const {
  const auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

bool Poly::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Monomial{}); }

bool Poly::contains(Symbol s) const {
  for (const auto& [m, c] : terms_)
    if (m[static_cast<int>(s)] > 0) return true;
  return false;
}

Poly& Poly::operator+=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Poly& Poly::operator*=(const Rational& a) {
  if (a == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= a;
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) {
      Monomial m{};
      for (int i = 0; i < kSymbolCount; ++i) m[i] = ma[i] + mb[i];
      out.add_term(m, ca * cb);
    }
  return out;
}

Poly Poly::substitute(Symbol s, const Poly& value) const {
  const int idx = static_cast<int>(s);
  Poly out;
  for (const auto& [m, c] : terms_) {
    Monomial rest = m;
    const int e = rest[idx];
    rest[idx] = 0;
    Poly term = Poly::monomial(rest, c);
    for (int i = 0; i < e; ++i) term = term * value;
    out += term;
  }
  return out;
}

Rational Poly::evaluate(const std::array<Rational, kSymbolCount>& values) const {
  Rational sum = 0;
  for (const auto& [m, c] : terms_) {
    Rational term = c;
    for (int i = 0; i < kSymbolCount; ++i)
      for (int e = 0; e < m[i]; ++e) term *= values[i];
    sum += term;
  }
  return sum;
}

namespace {

std::string monomial_string(const Monomial& m) {
  std::string out;
  for (int i = 0; i < kSymbolCount; ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += symbol_name(static_cast<Symbol>(i));
    if (m[i] > 1) out += "^" + std::to_string(m[i]);
  }
  return out;
}

std::string terms_string(const std::map<Monomial, Rational>& terms, const char* unit) {
  if (terms.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : terms) {
    if (!out.empty()) out += " + ";
    const std::string mono = monomial_string(m);
    out += "(" + to_string(c) + ")";
    if (!mono.empty()) out += "*" + mono;
    else if (unit != nullptr) out += std::string("*") + unit;
  }
  return out;
}

}  // namespace

std::string Poly::to_string() const { return terms_string(terms_, nullptr); }

// ---------------------------------------------------------------------------
// Jet

Jet::Jet(int order) : order_(order) {
  if (order < 0 || order > 8 || order % 2 != 0) throw JetError("jet order must be even and at most 8");
  coeffs_.resize(static_cast<std::size_t>(order / 2 + 1));
}

Jet::Jet(int order, std::vector<Poly> coeffs) : Jet(order) {
  if (coeffs.size() > coeffs_.size()) throw JetError("more coefficients than the truncation order allows");
  for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs_[i] = std::move(coeffs[i]);
}

Jet operator+(const Jet& a, const Jet& b) {
  Jet out(std::min(a.order_, b.order_));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

Jet operator-(const Jet& a, const Jet& b) {
  Jet out(std::min(a.order_, b.order_));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

Jet operator*(const Jet& a, const Jet& b) {
  Jet out(std::min(a.order_, b.order_));
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t j = 0; i + j < out.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

Jet operator*(const Jet& a, const Rational& s) {
  Jet out = a;
  for (auto& c : out.coeffs_) c *= s;
  return out;
}

Jet Jet::inverse() const {
  if (!(coeffs_[0] == Poly(1))) throw JetError("inverse requires the constant coefficient to be exactly 1");
  Jet out(order_);
  out[0] = Poly(1);
  for (std::size_t i = 1; i < size(); ++i) {
    Poly acc;
    for (std::size_t j = 1; j <= i; ++j) acc -= coeffs_[j] * out[i - j];
    out[i] = acc;
  }
  return out;
}

Jet Jet::exp() const {
  if (!coeffs_[0].is_zero()) throw JetError("exp requires a vanishing constant coefficient");
  Jet out(order_);
  out[0] = Poly(1);
  for (std::size_t i = 1; i < size(); ++i) {
    Poly acc;
    for (std::size_t j = 1; j <= i; ++j) acc += coeffs_[j] * out[i - j] * Rational(static_cast<long>(j));
    out[i] = acc * Rational(1, static_cast<long>(i));
  }
  return out;
}

Jet Jet::log() const {
  if (!(coeffs_[0] == Poly(1))) throw JetError("log requires the constant coefficient to be exactly 1");
  Jet out(order_);
  for (std::size_t i = 1; i < size(); ++i) {
    Poly acc = coeffs_[i];
    for (std::size_t j = 1; j < i; ++j)
      acc -= out[j] * coeffs_[i - j] * Rational(static_cast<long>(j), static_cast<long>(i));
    out[i] = acc;
  }
  return out;
}

Jet Jet::euler() const {
  Jet out(order_);
  for (std::size_t j = 0; j < size(); ++j) out[j] = coeffs_[j] * Rational(static_cast<long>(2 * j));
  return out;
}

Jet Jet::weighted(const std::vector<Rational>& w) const {
  if (w.size() < size()) throw JetError("weight vector shorter than the jet");
  Jet out(order_);
  for (std::size_t j = 0; j < size(); ++j) out[j] = coeffs_[j] * w[j];
  return out;
}

Jet Jet::substitute(Symbol s, const Poly& value) const {
  Jet out(order_);
  for (std::size_t j = 0; j < size(); ++j) out[j] = coeffs_[j].substitute(s, value);
  return out;
}

std::string Jet::to_string() const {
  std::string out;
  for (std::size_t j = 0; j < size(); ++j) {
    if (j > 0) out += " + ";
    out += "[" + coeffs_[j].to_string() + "]";
    if (j > 0) out += "*r^" + std::to_string(2 * j);
  }
  return out + " + O(r^" + std::to_string(order_ + 2) + ")";
}

Jet jet_combine(const Jet& a, const Jet& b, JetOp op) {
  switch (op) {
    case JetOp::Add: return a + b;
    case JetOp::Mul: return a * b;
    case JetOp::InvertUnitLeading: return a.inverse();
    case JetOp::Scale:
      if (!b[0].is_constant()) throw JetError("scale factor must be a rational constant");
      return a * b[0].constant_term();
  }
  throw JetError("unknown jet operation");
}

// ---------------------------------------------------------------------------
// Normal form

namespace {

const Poly kJ = Poly::symbol(Symbol::J);
const Poly kA2 = Poly::symbol(Symbol::A2);
const Poly kE2 = Poly::symbol(Symbol::E2);
const Poly kLapJ = Poly::symbol(Symbol::LapJ);

void require_prop21_dimension(int n) {
  if (n < 5) throw JetError("normal-form expansion needs n >= 5, got " + std::to_string(n));
}

}  // namespace

TraceInputs default_trace_inputs() {
  // g2 = -A gives tr g2 = -J and tr(g2 g2) = |A|^2; tr g4 = |A|^2/4 is the
  // trace compatible with tr B = 0.
  return TraceInputs{-kJ, kA2, kA2 * Rational(1, 4)};
}

Jet trace_log_jet(const TraceInputs& tr) {
  // tr log(1 + X) = tr X - tr X^2 / 2 + O(r^6), X = r^2 g2 + r^4 g4.
  return Jet(4, {Poly(0), tr.tr_g2, tr.tr_g4 - tr.tr_g2_sq * Rational(1, 2)});
}

Jet mean_curvature_from_traces(int n, const TraceInputs& tr) {
  // tr(g_r^{-1} d_r g_r) = d_r tr log g_r, so -(r/2) of it is -(1/2) euler(tr log).
  return Jet(4, {Poly(n)}) - trace_log_jet(tr).euler() * Rational(1, 2);
}

Poly lee_v4(int n) {
  return (kLapJ - kJ * kJ + kA2 * Rational(n)) * Rational(1, 8L * n * (n - 2));
}

NormalFormJets expand_normal_form(int n) { return expand_normal_form(n, default_trace_inputs()); }

NormalFormJets expand_normal_form(int n, const TraceInputs& tr) {
  require_prop21_dimension(n);
  NormalFormJets out;
  out.n = n;
  out.det_jet = (trace_log_jet(tr) * Rational(1, 2)).exp();
  out.h_jet = mean_curvature_from_traces(n, tr);
  out.v4 = lee_v4(n);
  out.v_jet = Jet(4, {Poly(1), kJ * Rational(1, 2L * n), out.v4});
  return out;
}

NormalFormJets closed_form_normal_form(int n) {
  require_prop21_dimension(n);
  NormalFormJets out;
  out.n = n;
  out.det_jet = Jet(4, {Poly(1), kJ * Rational(-1, 2), (kJ * kJ - kA2) * Rational(1, 8)});
  out.h_jet = Jet(4, {Poly(n), kJ, kA2 * Rational(1, 2)});
  out.v4 = lee_v4(n);
  out.v_jet = Jet(4, {Poly(1), kJ * Rational(1, 2L * n), out.v4});
  return out;
}

// ---------------------------------------------------------------------------
// Integral classes

Rational IntegralClass::coeff(const Monomial& m) const {
  const auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void IntegralClass::add(const Monomial& m, const Rational& c) {
  if (m[static_cast<int>(Symbol::A2)] != 0 || m[static_cast<int>(Symbol::LapJ)] != 0)
    throw UnsupportedIntegralIdentity("integral classes hold only J and E2 monomials");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

IntegralClass& IntegralClass::operator+=(const IntegralClass& o) {
  for (const auto& [m, c] : o.terms_) add(m, c);
  return *this;
}

IntegralClass& IntegralClass::operator*=(const Rational& s) {
  if (s == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= s;
  return *this;
}

std::string IntegralClass::to_string() const { return terms_string(terms_, "Vol"); }

IntegralClass boundary_integral(const Poly& p, int n) {
  if (n < 3) throw JetError("boundary_integral: n >= 3 required");
  const int lap = static_cast<int>(Symbol::LapJ);
  Poly reduced;
  for (const auto& [m, c] : p.terms()) {
    if (m[lap] == 0) {
      reduced += Poly::monomial(m, c);
      continue;
    }
    Monomial bare{};
    bare[lap] = 1;
    if (m != bare)
      throw UnsupportedIntegralIdentity("unsupported integral identity: Lap J appears in the product " +
                                        Poly::monomial(m, c).to_string());
    // Divergence theorem on a closed boundary: the term integrates to zero.
  }
  const Poly a2 = kE2 * Rational(1, static_cast<long>(n - 2) * (n - 2)) + kJ * kJ * Rational(1, n);
  reduced = reduced.substitute(Symbol::A2, a2);
  IntegralClass out;
  for (const auto& [m, c] : reduced.terms()) out.add(m, c);
  return out;
}

// ---------------------------------------------------------------------------
// Asymptotic Heintze-Karcher expansion

bool Prop21Certificate::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return !checks.empty();
}

namespace {

IdentityCheck poly_check(std::string name, const Poly& a, const Poly& b) {
  return {std::move(name), a == b, a.to_string(), b.to_string()};
}

IdentityCheck class_check(std::string name, const IntegralClass& a, const IntegralClass& b) {
  return {std::move(name), a == b, a.to_string(), b.to_string()};
}

IdentityCheck rational_check(std::string name, const Rational& a, const Rational& b) {
  return {std::move(name), a == b, to_string(a), to_string(b)};
}

}  // namespace

Prop21Certificate verify_prop21(int n) {
  require_prop21_dimension(n);
  const NormalFormJets nf = expand_normal_form(n);
  const NormalFormJets closed = closed_form_normal_form(n);

  Prop21Certificate cert;
  cert.n = n;
  cert.checks.push_back(poly_check("det jet: exp(tr log / 2) equals closed form r^4 coefficient", nf.det_jet[2],
                                   closed.det_jet[2]));
  cert.checks.push_back(poly_check("det jet: r^2 coefficient", nf.det_jet[1], closed.det_jet[1]));
  cert.checks.push_back(poly_check("mean curvature jet: trace route equals closed form r^2 coefficient",
                                   nf.h_jet[1], closed.h_jet[1]));
  cert.checks.push_back(poly_check("mean curvature jet: r^4 coefficient", nf.h_jet[2], closed.h_jet[2]));

  // n V / H_r = r^{-1} (v_jet) (h_jet / n)^{-1}.
  const Jet v_over_h = nf.v_jet * (nf.h_jet * Rational(1, n)).inverse();
  cert.alpha = v_over_h[2];
  cert.checks.push_back(poly_check("V/H r^2 coefficient equals -J/(2n)", v_over_h[1], kJ * Rational(-1, 2L * n)));
  cert.checks.push_back(poly_check("alpha closed form", cert.alpha,
                                   nf.v4 - kA2 * Rational(1, 2L * n) + kJ * kJ * Rational(1, 2L * n * n)));

  // Surface integral: r^{-n-1}/n * int (n V/H)(det).
  const Jet surface = v_over_h * nf.det_jet;
  // Volume integral: int_r t^{-n-2} (t V)(det) dt; the t^{-n-2+2j} term
  // integrates to r^{-n-1+2j} / (n+1-2j), i.e. weight (n+1)/(n+1-2j) after
  // the common factor r^{-n-1}/(n+1).
  const Jet volume = (nf.v_jet * nf.det_jet)
                         .weighted({Rational(1), Rational(n + 1, n - 1), Rational(n + 1, n - 3)});

  cert.checks.push_back(poly_check("surface leading term is Vol(M)", surface[0], Poly(1)));
  cert.checks.push_back(poly_check("volume leading term is Vol(M)", volume[0], Poly(1)));
  cert.checks.push_back(poly_check(
      "volume integrand r^4 coefficient equals v4 + (J^2 - A2)/8 - J^2/(4n)", (nf.v_jet * nf.det_jet)[2],
      nf.v4 + (kJ * kJ - kA2) * Rational(1, 8) - kJ * kJ * Rational(1, 4L * n)));
  cert.checks.push_back(poly_check("surface integrand r^4 coefficient equals alpha + (J^2 - A2)/8 + J^2/(4n)",
                                   surface[2],
                                   cert.alpha + (kJ * kJ - kA2) * Rational(1, 8) + kJ * kJ * Rational(1, 4L * n)));

  cert.alpha1 = boundary_integral(surface[1], n);
  cert.alpha2 = boundary_integral(surface[2], n);
  cert.beta1 = boundary_integral(volume[1], n);
  cert.beta2 = boundary_integral(volume[2], n);
  cert.beta = cert.alpha2 - cert.beta2;

  IntegralClass expected_first;
  expected_first.add(Monomial{1, 0, 0, 0}, Rational(-(n + 1), 2L * n));
  cert.checks.push_back(class_check("alpha1 equals beta1", cert.alpha1, cert.beta1));
  cert.checks.push_back(class_check("alpha1 equals -(n+1)/(2n) int J", cert.alpha1, expected_first));
  cert.checks.push_back(rational_check("alpha2 - beta2 has no int J^2 channel", cert.beta.int_J2(), Rational(0)));

  IntegralClass expected_beta;
  expected_beta.add(Monomial{0, 0, 1, 0}, Rational(1, static_cast<long>(n) * (n - 2) * (n - 2) * (n - 2)));
  cert.checks.push_back(class_check("alpha2 - beta2 equals int E2 / (n (n-2)^3)", cert.beta, expected_beta));

  // Round-sphere data (k = 1): J = n/2, |A|^2 = n/4, Lap J = 0 gives v4 = 0.
  const Rational v4_sphere = nf.v4.evaluate({Rational(n, 2), Rational(n, 4), Rational(0), Rational(0)});
  cert.checks.push_back(rational_check("v4 vanishes on round-sphere data", v4_sphere, Rational(0)));
  return cert;
}

}  // namespace hkcce::jets
