#include "hkcce/hk_verifier.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "hkcce/format.hpp"
#include "hkcce/quadrature.hpp"
#include "hkcce/special_fn.hpp"

namespace hkcce {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::equality: return "equality";
    case Verdict::strict: return "strict";
    case Verdict::fail: return "fail";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

namespace {

double lookup(const std::vector<NamedValue>& values, const std::string& key) {
  for (const auto& v : values)
    if (v.name == key) return v.value;
  return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

double VerificationReport::diagnostic(const std::string& key) const { return lookup(diagnostics, key); }
double VerificationReport::remainder(const std::string& key) const { return lookup(remainders, key); }

Verdict classify(double lhs, double gap, double err_est, double tol) {
  const double scale = tol * std::max(std::abs(lhs), 1.0);
  if (!std::isfinite(gap) || !std::isfinite(err_est) || err_est > scale) return Verdict::inconclusive;
  if (std::abs(gap) <= scale) return Verdict::equality;
  if (gap > 10.0 * scale) return Verdict::strict;
  if (gap < -scale) return Verdict::fail;
  return Verdict::inconclusive;
}

namespace {

constexpr int kAsymptoticOrder = 16;
// The integrands decay like exp(-rate tau); stop where that factor is e^-34.
constexpr double kDecayLength = 34.0;
constexpr double kRemainderCeiling = 1e-7;
constexpr double kRemainderFloor = -1e-9;
constexpr double kStrictRelativeGap = 1e-3;
// Observed amplification of the ODE tolerance into Q and the integrals.
constexpr double kOdeErrorGain = 100.0;

struct RadialQuadrature {
  std::vector<QuadNode> fine;
  std::vector<QuadNode> coarse;
  double tau_max = 0.0;
  double rate = 1.0;

  std::vector<double> taus() const {
    std::vector<double> out;
    out.reserve(fine.size() + coarse.size() + 1);
    for (const auto& q : fine) out.push_back(q.x);
    for (const auto& q : coarse) out.push_back(q.x);
    out.push_back(tau_max);
    std::sort(out.begin(), out.end());
    return out;
  }
};

RadialQuadrature radial_quadrature(double rate, int order) {
  if (order < 4 || order > 64 || order % 2 != 0) throw DomainError("quad_order must be even and lie in [4, 64]");
  RadialQuadrature q;
  q.rate = rate;
  q.tau_max = std::max(8.0, std::ceil(kDecayLength / rate));
  std::vector<double> breaks{0.0, 0.25, 0.5};
  for (double t = 1.0; t <= q.tau_max; t += 1.0) breaks.push_back(t);
  q.fine = composite_nodes(breaks, order);
  q.coarse = composite_nodes(breaks, order / 2);
  return q;
}

template <std::size_t N>
struct ChannelSums {
  std::array<double, N> value{};
  std::array<double, N> err{};
};

/// Integrates N radial channels over tau in (0, inf). `fn` returns the
/// integrands at one point, already multiplied by the volume density.
template <std::size_t N, class Fn>
ChannelSums<N> integrate_channels(const CompactifiedGeometry& g, const RadialQuadrature& q, Fn fn,
                                  double extra_rel_err) {
  std::array<double, N> fine{}, coarse{}, abs_sum{};
  for (const auto& node : q.fine) {
    const auto v = fn(g.at(node.x));
    for (std::size_t i = 0; i < N; ++i) {
      fine[i] += node.w * v[i];
      abs_sum[i] += node.w * std::abs(v[i]);
    }
  }
  for (const auto& node : q.coarse) {
    const auto v = fn(g.at(node.x));
    for (std::size_t i = 0; i < N; ++i) coarse[i] += node.w * v[i];
  }
  const auto tail = fn(g.at(q.tau_max));
  ChannelSums<N> out;
  for (std::size_t i = 0; i < N; ++i) {
    const double t = tail[i] / q.rate;
    out.value[i] = fine[i] + t;
    out.err[i] = std::abs(fine[i] - coarse[i]) + std::abs(t) +
                 (64.0 * std::numeric_limits<double>::epsilon() + extra_rel_err) * abs_sum[i];
  }
  return out;
}

double require_positive_W(const PointData& p) {
  if (!(p.W > 0.0))
    throw ConsistencyError("nonpositive T or J at tau = " + format_number(p.tau));
  return std::log(p.W);
}

/// Slowest decay rate among the adapted integrands.
double adapted_rate(double gamma) { return std::min(2.0 * gamma, 4.0 - 4.0 * gamma); }

bool is_half(double gamma) { return std::abs(gamma - 0.5) < 1e-12; }

VerificationReport base_report(std::string name, int n, double gamma, double k, const VerifyOptions& opts) {
  if (!(opts.quad_tol > 0.0)) throw DomainError("quad_tol must be positive");
  VerificationReport r;
  r.name = std::move(name);
  r.n = n;
  r.gamma = gamma;
  r.k = k;
  r.ode_tol = opts.ode_tol;
  r.quad_tol = opts.quad_tol;
  r.match_T = opts.T;
  return r;
}

void finish(VerificationReport& r) {
  r.gap = r.lhs - r.rhs;
  r.verdict = classify(r.lhs, r.gap, r.err_est, r.quad_tol);
  r.pass = r.verdict == r.expected;
}

struct AdaptedIntegrals {
  CompactifiedGeometry geometry;
  RadialQuadrature quad;
  double volume = 0.0;  // Vol(M, g-hat)
  // Per unit boundary volume.
  ChannelSums<4> sums;  // I, R1, R2, Vol(X)
};

AdaptedIntegrals adapted_integrals(int n, double gamma, double k, const VerifyOptions& opts) {
  const ModelSpace m(n, k);
  AdaptedIntegrals a;
  a.quad = radial_quadrature(adapted_rate(gamma), opts.quad_order);
  const std::vector<double> taus = a.quad.taus();
  a.geometry = build_adapted(m, gamma, ScatteringOptions{opts.ode_tol, opts.T, opts.order}, taus);
  a.volume = boundary_volume(n, k);
  const double kk = (1.0 - gamma) / gamma;
  const double extra = kOdeErrorGain * opts.ode_tol;
  a.sums = integrate_channels<4>(
      a.geometry, a.quad,
      [&](const PointData& p) {
        const double lw = require_positive_W(p);
        const double lr = p.log_rho;
        const double dv = p.log_volume_density;
        return std::array<double, 4>{
            std::exp((2.0 * gamma - 1.0) * lr + (1.0 - kk) * lw + dv),
            2.0 * kk * std::exp((-1.0 - 2.0 * gamma) * lr + (-kk - 1.0) * lw + dv) * p.rho2_tracefree_sq,
            kk * (kk + 1.0) * std::exp(-lr + (-kk - 2.0) * lw + dv) * p.dW * p.dW,
            std::exp(dv)};
      },
      extra);
  return a;
}

struct LeeIntegrals {
  CompactifiedGeometry geometry;
  RadialQuadrature quad;
  double volume = 0.0;
  ChannelSums<3> sums;  // int rho, 2 rho J^-3 |grad J|^2, (n+1) rho^-1 J^-2 |tf|^2
};

LeeIntegrals lee_integrals(int n, double k, int quad_order) {
  const ModelSpace m(n, k);
  LeeIntegrals a;
  a.quad = radial_quadrature(2.0, quad_order);
  a.geometry = build_lee(m);
  a.volume = boundary_volume(n, k);
  a.sums = integrate_channels<3>(
      a.geometry, a.quad,
      [&](const PointData& p) {
        const double lj = require_positive_W(p);
        const double lr = p.log_rho;
        const double dv = p.log_volume_density;
        return std::array<double, 3>{std::exp(lr + dv), 2.0 * std::exp(-lr - 3.0 * lj + dv) * p.dW * p.dW,
                                     (n + 1.0) * std::exp(-3.0 * lr - 2.0 * lj + dv) * p.rho2_tracefree_sq};
      },
      0.0);
  return a;
}

void add_geometry_diagnostics(VerificationReport& r, const CompactifiedGeometry& g) {
  r.diagnostics.push_back({g.kind == CompactKind::adapted ? "Q" : "J_hat", g.q_value, 0.0});
  r.diagnostics.push_back({"boundary_W_extrapolated", g.boundary_W_extrapolated, 0.0});
  r.diagnostics.push_back({"boundary_W_expected", g.boundary_W_expected, 0.0});
}

std::string largest_contributor(const std::vector<NamedValue>& terms) {
  const auto it = std::max_element(terms.begin(), terms.end(), [](const NamedValue& a, const NamedValue& b) {
    return std::abs(a.value) < std::abs(b.value);
  });
  return it == terms.end() ? std::string{} : it->name;
}

}  // namespace

VerificationReport verify_adapted(int n, double gamma, double k, const VerifyOptions& opts) {
  VerificationReport r = base_report("hk-adapted", n, gamma, k, opts);
  const AdaptedIntegrals a = adapted_integrals(n, gamma, k, opts);
  const double kk = (1.0 - gamma) / gamma;
  const double Q = a.geometry.q_value;
  const double C = hk_constant(n, gamma);
  r.quad_nodes = static_cast<int>(a.quad.fine.size());
  r.lhs = a.volume * std::pow(Q, -kk);
  r.rhs = C * a.volume * a.sums.value[0];
  r.err_est = C * a.volume * a.sums.err[0] + kOdeErrorGain * opts.ode_tol * r.lhs;
  r.scaling_exponent = -0.5 * n - (1.0 - gamma);

  // gap = (R1 + R2) / ((2 - 2 gamma) (-4 gamma/d)^{-k}) by the defect identity.
  const double to_gap = 1.0 / ((2.0 - 2.0 * gamma) * std::pow(-4.0 * gamma / d_gamma(gamma), -kk));
  r.remainders.push_back({"R1_tracefree_hessian", to_gap * a.volume * a.sums.value[1], to_gap * a.volume * a.sums.err[1]});
  r.remainders.push_back({"R2_gradient_T", to_gap * a.volume * a.sums.value[2], to_gap * a.volume * a.sums.err[2]});
  r.diagnostics.push_back({"C", C, 0.0});
  r.diagnostics.push_back({"integral_rho_T", a.volume * a.sums.value[0], a.volume * a.sums.err[0]});
  add_geometry_diagnostics(r, a.geometry);

  r.expected = is_half(gamma) ? Verdict::equality : Verdict::strict;
  finish(r);
  if (r.verdict == Verdict::strict && !is_half(gamma) && !(r.gap > kStrictRelativeGap * r.lhs)) {
    r.verdict = Verdict::inconclusive;
    r.message = "gap below the relative strictness threshold";
  }
  for (const auto& rem : r.remainders)
    if (rem.value < kRemainderFloor) {
      r.verdict = Verdict::fail;
      r.message = "negative remainder " + rem.name;
    }
  r.pass = r.verdict == r.expected;
  return r;
}

VerificationReport verify_cla(int n, double k, const VerifyOptions& opts) {
  VerificationReport r = base_report("hk-cla", n, 0.5, k, opts);
  const AdaptedIntegrals a = adapted_integrals(n, 0.5, k, opts);
  const double Q1 = a.geometry.q_value;
  r.quad_nodes = static_cast<int>(a.quad.fine.size());
  r.lhs = a.volume / (n * Q1);
  r.rhs = (n + 1.0) / n * a.volume * a.sums.value[3];
  r.err_est = (n + 1.0) / n * a.volume * a.sums.err[3] + kOdeErrorGain * opts.ode_tol * r.lhs;
  r.scaling_exponent = -0.5 * n - 0.5;
  r.diagnostics.push_back({"volume_X", a.volume * a.sums.value[3], a.volume * a.sums.err[3]});
  r.diagnostics.push_back({"H_bar_expected", n * Q1, 0.0});
  r.diagnostics.push_back({"H_bar_extrapolated", a.geometry.mean_curvature_extrapolated, 0.0});
  add_geometry_diagnostics(r, a.geometry);
  r.expected = Verdict::equality;
  finish(r);
  return r;
}

VerificationReport verify_lee(int n, double k, const VerifyOptions& opts) {
  VerificationReport r = base_report("hk-lee", n, std::numeric_limits<double>::quiet_NaN(), k, opts);
  const LeeIntegrals a = lee_integrals(n, k, opts.quad_order);
  const double J = a.geometry.q_value;
  r.quad_nodes = static_cast<int>(a.quad.fine.size());
  r.lhs = a.volume / J;
  r.rhs = 2.0 * (n + 1.0) / n * a.volume * a.sums.value[0];
  r.err_est = 2.0 * (n + 1.0) / n * a.volume * a.sums.err[0];
  r.scaling_exponent = -0.5 * n - 1.0;
  r.remainders.push_back({"gradient_J", a.volume * a.sums.value[1], a.volume * a.sums.err[1]});
  r.remainders.push_back({"tracefree_hessian", a.volume * a.sums.value[2], a.volume * a.sums.err[2]});
  r.diagnostics.push_back({"integral_rho", a.volume * a.sums.value[0], a.volume * a.sums.err[0]});
  add_geometry_diagnostics(r, a.geometry);
  r.expected = Verdict::equality;
  finish(r);
  return r;
}

VerificationReport defect_identity(CompactKind kind, int n, double gamma, double k, const VerifyOptions& opts) {
  std::vector<NamedValue> terms;
  VerificationReport r;
  bool rigid = false;
  if (kind == CompactKind::adapted) {
    r = base_report("defect-adapted", n, gamma, k, opts);
    const AdaptedIntegrals a = adapted_integrals(n, gamma, k, opts);
    const double kk = (1.0 - gamma) / gamma;
    const double c = n * (n + 2.0 * gamma) * (2.0 * gamma - 1.0) / (2.0 * (n + 1.0));
    const double coef = (1.0 - gamma) * (n + 2.0 * gamma) - c * kk;
    r.quad_nodes = static_cast<int>(a.quad.fine.size());
    r.lhs = (2.0 - 2.0 * gamma) * std::pow(-4.0 * gamma / d_gamma(gamma), -kk) *
            std::pow(a.geometry.q_value, -kk) * a.volume;
    terms = {{"main", coef * a.volume * a.sums.value[0], std::abs(coef) * a.volume * a.sums.err[0]},
             {"R1_tracefree_hessian", a.volume * a.sums.value[1], a.volume * a.sums.err[1]},
             {"R2_gradient_T", a.volume * a.sums.value[2], a.volume * a.sums.err[2]}};
    r.err_est = kOdeErrorGain * opts.ode_tol * r.lhs;
    r.scaling_exponent = -0.5 * n - (1.0 - gamma);
    add_geometry_diagnostics(r, a.geometry);
    rigid = is_half(gamma);
  } else {
    r = base_report("defect-lee", n, std::numeric_limits<double>::quiet_NaN(), k, opts);
    const LeeIntegrals a = lee_integrals(n, k, opts.quad_order);
    r.quad_nodes = static_cast<int>(a.quad.fine.size());
    r.lhs = n * n / (n + 1.0) * a.volume / a.geometry.q_value;
    terms = {{"main", 2.0 * n * a.volume * a.sums.value[0], 2.0 * n * a.volume * a.sums.err[0]},
             {"gradient_J", a.volume * a.sums.value[1], a.volume * a.sums.err[1]},
             {"tracefree_hessian", a.volume * a.sums.value[2], a.volume * a.sums.err[2]}};
    r.scaling_exponent = -0.5 * n - 1.0;
    add_geometry_diagnostics(r, a.geometry);
    rigid = true;
  }
  r.rhs = 0.0;
  for (const auto& t : terms) {
    r.rhs += t.value;
    r.err_est += t.err_est;
  }
  r.diagnostics.push_back(terms[0]);
  r.remainders.assign(terms.begin() + 1, terms.end());
  r.expected = Verdict::equality;
  finish(r);
  if (r.verdict != Verdict::equality) r.message = "imbalance; largest contributor " + largest_contributor(terms);
  for (const auto& rem : r.remainders) {
    if (rem.value < kRemainderFloor) {
      r.verdict = Verdict::fail;
      r.message = "negative remainder " + rem.name;
    } else if (rigid && rem.value > kRemainderCeiling) {
      r.verdict = Verdict::fail;
      r.message = "remainder " + rem.name + " does not vanish on the model";
    }
  }
  r.pass = r.verdict == r.expected;
  return r;
}

std::vector<AsymptoticRow> asymptotic_ratio(int n, double k, std::span<const double> r_values) {
  const ModelSpace m(n, k);
  const double vol = boundary_volume(n, k);
  std::vector<AsymptoticRow> rows;
  rows.reserve(r_values.size());
  for (double r : r_values) {
    if (!(r > 0.0 && r < m.r_center())) throw DomainError("asymptotic_ratio: r must lie in (0, 2/sqrt(k))");
    const double t_r = m.t_from_r(r);
    const double tau_r = m.tau_from_t(t_r);
    const double f_r = m.warp(t_r);
    // V = f', H_r = n f'/f with respect to g_+.
    const double surface = vol * std::pow(f_r, n) * m.warp_prime(t_r) / mean_curvature_exact(m, r);

    const int panels = std::max(1, static_cast<int>(std::ceil(tau_r / 0.5)));
    std::vector<double> breaks(static_cast<std::size_t>(panels) + 1);
    for (int i = 0; i <= panels; ++i) breaks[static_cast<std::size_t>(i)] = tau_r * i / panels;
    const auto nodes = composite_nodes(breaks, kAsymptoticOrder);
    // Scaled by f(tau_r)^{n+1} to keep the integrand O(1).
    const double scaled = integrate(nodes, [&](double tau) {
      const double t = m.t_from_tau(tau);
      return m.warp_prime(t) / f_r * std::pow(m.warp(t) / f_r, n);
    });
    const double volume = vol * scaled * std::pow(f_r, n + 1);

    AsymptoticRow row;
    row.n = n;
    row.k = k;
    row.r = r;
    row.ratio = surface / ((n + 1.0) / n * volume);
    row.abs_err = std::abs(row.ratio - 1.0);
    rows.push_back(row);
  }
  return rows;
}

std::vector<double> asymptotic_radii(double k, int count) {
  if (count < 2) throw DomainError("asymptotic_radii: count must be at least 2");
  if (!(k > 0.0)) throw DomainError("asymptotic_radii: k must be positive");
  const double top = 0.5 / std::sqrt(k);
  std::vector<double> r(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) r[static_cast<std::size_t>(i)] = top * std::pow(1e-4, double(i) / (count - 1));
  return r;
}

}  // namespace hkcce
