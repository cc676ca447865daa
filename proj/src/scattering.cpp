#include "hkcce/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hkcce {

namespace {

void check_indicial(int n, long double lambda, long double mu, int order) {
  for (int m = 1; m <= order; ++m) {
    const long double e = mu + 2.0L * m;
    const long double p = e * e - n * e + lambda;
    if (std::abs(p) <= 1e-12L * (1.0L + e * e))
      throw ResonanceError("Frobenius branch mu = " + std::to_string(static_cast<double>(mu)) +
                           ": resonance at r^{mu+" + std::to_string(2 * m) + "}");
  }
}

Real coth(Real x) { return 1.0L / std::tanh(x); }

}  // namespace

// ---------------------------------------------------------------------------
// Frobenius branches

Real FrobeniusBranch::series(Real r) const {
  const Real r2 = r * r;
  Real sum = 0;
  for (std::size_t j = coeffs.size(); j-- > 0;) sum = sum * r2 + coeffs[j];
  return sum;
}

Real FrobeniusBranch::series_euler(Real r) const {
  const Real r2 = r * r;
  Real sum = 0;
  for (std::size_t j = coeffs.size(); j-- > 1;) sum = sum * r2 + 2.0L * j * coeffs[j];
  return sum * r2;
}

Real FrobeniusBranch::value(Real r) const { return std::pow(r, static_cast<Real>(mu)) * series(r); }

Real FrobeniusBranch::derivative(Real r) const {
  return std::pow(r, static_cast<Real>(mu) - 1.0L) * (static_cast<Real>(mu) * series(r) + series_euler(r));
}

Real FrobeniusBranch::last_term(Real r) const {
  if (coeffs.size() < 2) return 0;
  const std::size_t j = coeffs.size() - 1;
  return std::abs(coeffs[j] * std::pow(r, static_cast<Real>(2 * j)));
}

FrobeniusBranch frobenius_branch(int n, double s, double k, double mu, int order) {
  if (order < 0 || order > 12) throw DomainError("frobenius_branch: order must lie in [0, 12]");
  const long double lambda = static_cast<long double>(s) * (n - static_cast<long double>(s));
  check_indicial(n, lambda, mu, order);
  FrobeniusBranch b;
  b.mu = mu;
  b.coeffs = frobenius_recursion<Real>(n, lambda, k, mu, order);
  return b;
}

FrobeniusBranch frobenius_branch(const QCurvParams& p, double mu, int order) {
  const double tol = 1e-12;
  if (std::abs(mu - p.s) > tol && std::abs(mu - (p.n - p.s)) > tol)
    throw DomainError("frobenius_branch: mu must be s or n - s");
  return frobenius_branch(p.n, p.s, p.k, mu, order);
}

std::vector<jets::Rational> frobenius_dirichlet_exact(int n, const jets::Rational& gamma, const jets::Rational& k,
                                                      int order) {
  using jets::Rational;
  const Rational s = Rational(n, 2) + gamma;
  const Rational mu = Rational(n) - s;
  return frobenius_recursion<Rational>(n, s * mu, k, mu, order);
}

// ---------------------------------------------------------------------------
// Interior solution

Real RadialProfile::d2u(std::size_t i) const {
  return -static_cast<Real>(n) * coth(tau[i]) * du[i] - static_cast<Real>(lambda) * u[i];
}

Real RadialProfile::d3u(std::size_t i) const {
  const Real t = tau[i];
  const Real sh = std::sinh(t);
  const Real dcoth = -1.0L / (sh * sh);
  return -static_cast<Real>(n) * (dcoth * du[i] + coth(t) * d2u(i)) - static_cast<Real>(lambda) * du[i];
}

std::size_t RadialProfile::index_of(double tau_value) const {
  const auto it = std::lower_bound(tau.begin(), tau.end(), tau_value - 1e-12);
  if (it == tau.end() || std::abs(*it - tau_value) > 1e-12)
    throw DomainError("RadialProfile: tau = " + std::to_string(tau_value) + " is not a grid point");
  return static_cast<std::size_t>(it - tau.begin());
}

std::vector<Real> interior_taylor_coefficients(int n, double lambda, int terms) {
  // sinh(t) u'' + n cosh(t) u' + lambda sinh(t) u = 0 with u = sum_m b_m t^m, b odd = 0.
  // The t^q coefficient (q odd) determines b_{q+1}: (q+1)(q+n) b_{q+1} = -(rest).
  const int max_index = 2 * (terms - 1);
  std::vector<Real> b(static_cast<std::size_t>(max_index) + 1, 0.0L);
  std::vector<Real> inv_fact(static_cast<std::size_t>(max_index) + 3, 1.0L);
  for (std::size_t i = 1; i < inv_fact.size(); ++i) inv_fact[i] = inv_fact[i - 1] / static_cast<Real>(i);
  b[0] = 1.0L;
  for (int q = 1; q + 1 <= max_index; q += 2) {
    Real rest = 0;
    for (int i = 3; i <= q + 2; i += 2) {
      const int m = q - i + 2;
      rest += inv_fact[i] * m * (m - 1) * b[m];
    }
    for (int i = 2; i <= q + 1; i += 2) {
      const int m = q - i + 1;
      rest += n * inv_fact[i] * m * b[m];
    }
    for (int i = 1; i <= q; i += 2) rest += static_cast<Real>(lambda) * inv_fact[i] * b[q - i];
    b[q + 1] = -rest / (static_cast<Real>(q + 1) * (q + n));
  }
  std::vector<Real> even;
  for (int m = 0; m <= max_index; m += 2) even.push_back(b[m]);
  return even;
}

RadialProfile solve_interior(int n, double s, double tol, std::span<const double> grid) {
  if (!(tol >= 1e-12)) throw DomainError("solve_interior: tolerance must be at least 1e-12");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0)) throw DomainError("solve_interior: grid points must be positive");
    if (i > 0 && !(grid[i] > grid[i - 1])) throw DomainError("solve_interior: grid must be strictly increasing");
  }
  RadialProfile prof;
  prof.n = n;
  prof.s = s;
  prof.lambda = s * (n - s);
  prof.tau.assign(grid.begin(), grid.end());
  prof.u.resize(grid.size());
  prof.du.resize(grid.size());

  const std::vector<Real> taylor = interior_taylor_coefficients(n, prof.lambda, 5);
  auto taylor_eval = [&](Real t) {
    Real u = 0, du = 0;
    const Real t2 = t * t;
    for (std::size_t j = taylor.size(); j-- > 0;) u = u * t2 + taylor[j];
    for (std::size_t j = taylor.size(); j-- > 1;) du = du * t2 + 2.0L * j * taylor[j];
    return State2{u, du * t};
  };

  std::vector<Real> outputs;
  std::size_t first_ode = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] <= kTaylorStart) {
      const State2 y = taylor_eval(grid[i]);
      prof.u[i] = y[0];
      prof.du[i] = y[1];
      first_ode = i + 1;
    } else {
      outputs.push_back(grid[i]);
    }
  }
  if (outputs.empty()) return prof;

  const Real lambda = prof.lambda;
  const Rhs2 rhs = [n, lambda](Real t, const State2& y) {
    return State2{y[1], -static_cast<Real>(n) * coth(t) * y[1] - lambda * y[0]};
  };
  OdeOptions opts;
  opts.rtol = tol;
  const std::vector<State2> ys = integrate_dp45(rhs, kTaylorStart, taylor_eval(kTaylorStart), outputs, opts);
  for (std::size_t i = 0; i < ys.size(); ++i) {
    prof.u[first_ode + i] = ys[i][0];
    prof.du[first_ode + i] = ys[i][1];
  }
  return prof;
}

RadialProfile solve_interior(const QCurvParams& p, double tol, std::span<const double> grid) {
  return solve_interior(p.n, p.s, tol, grid);
}

// ---------------------------------------------------------------------------
// Matching

namespace {

struct MatchPoint {
  Real c1, c2;
  double condition;
  double truncation;
};

MatchPoint match_at(const RadialProfile& prof, const ModelSpace& model, const FrobeniusBranch& b1,
                    const FrobeniusBranch& b2, double T) {
  const std::size_t i = prof.index_of(T);
  const Real r = static_cast<Real>(model.r_from_tau(T));
  // d/dtau = -r d/dr.
  const Real m11 = b1.value(r), m12 = b2.value(r);
  const Real m21 = -r * b1.derivative(r), m22 = -r * b2.derivative(r);
  const Real det = m11 * m22 - m12 * m21;
  if (det == 0) throw MatchingError("match_and_q: singular branch matrix");
  const Real u = prof.u[i], du = prof.du[i];
  MatchPoint mp{};
  mp.c1 = (m22 * u - m12 * du) / det;
  mp.c2 = (m11 * du - m21 * u) / det;

  // Relative sensitivity of S = c2/c1 to relative perturbations of u and u'.
  auto dS = [&](Real pu, Real pdu) {
    const Real d1 = (m22 * pu - m12 * pdu) / det;
    const Real d2 = (m11 * pdu - m21 * pu) / det;
    return std::abs((d2 * mp.c1 - mp.c2 * d1) / (mp.c1 * mp.c1));
  };
  const Real S = mp.c2 / mp.c1;
  const Real sens = dS(u, 0) + dS(0, du);
  mp.condition = static_cast<double>(S != 0 ? sens / std::abs(S) : sens);
  mp.truncation = static_cast<double>(std::max(b1.last_term(r), b2.last_term(r)));
  return mp;
}

}  // namespace

ScatteringResult match_and_q(const RadialProfile& profile, const QCurvParams& p, double T, int order,
                             double truncation_tol) {
  const ModelSpace model(p.n, p.k);
  ScatteringResult res;
  res.params = p;
  res.T = T;
  res.T_prime = T - 2.0;
  res.dirichlet = frobenius_branch(p, p.n - p.s, order);
  res.neumann = frobenius_branch(p, p.s, order);

  const MatchPoint main = match_at(profile, model, res.dirichlet, res.neumann, T);
  const MatchPoint check = match_at(profile, model, res.dirichlet, res.neumann, res.T_prime);
  res.truncation_estimate = std::max(main.truncation, check.truncation);
  if (res.truncation_estimate > truncation_tol)
    throw MatchingError("match_and_q: Frobenius truncation " + std::to_string(res.truncation_estimate) +
                        " exceeds tolerance at T' = " + std::to_string(res.T_prime));
  res.condition_estimate = std::max(main.condition, check.condition);
  if (!(res.condition_estimate <= kMaxCondition))
    throw MatchingError("match_and_q: condition estimate " + std::to_string(res.condition_estimate) +
                        " above 1e12 at T = " + std::to_string(T));
  if (main.c1 == 0) throw MatchingError("match_and_q: vanishing leading coefficient c1");

  res.c1 = main.c1;
  res.c2 = main.c2;
  const Real S = main.c2 / main.c1;
  const Real S_check = check.c2 / check.c1;
  res.scattering_value = static_cast<double>(S);
  res.consistency_gap = static_cast<double>(std::abs(S - S_check) / std::max(std::abs(S), 1e-300L));
  res.q_value = 2.0 / (p.n - 2.0 * p.gamma) * d_gamma(p.gamma) * res.scattering_value;
  return res;
}

ScatteringResult q_curvature(const QCurvParams& p, const ScatteringOptions& opts) {
  if (!(opts.T - 2.0 > kTaylorStart)) throw DomainError("q_curvature: T must exceed 2");
  const std::vector<double> grid{opts.T - 2.0, opts.T};
  const RadialProfile prof = solve_interior(p, opts.ode_tol, grid);
  return match_and_q(prof, p, opts.T, opts.order);
}

// ---------------------------------------------------------------------------
// Lee potential

RadialProfile lee_potential_exact(const ModelSpace& m, std::span<const double> tau_grid) {
  RadialProfile prof;
  prof.n = m.n();
  prof.s = m.n() + 1.0;
  prof.lambda = -(m.n() + 1.0);
  const Real sk = std::sqrt(static_cast<Real>(m.k()));
  for (double t : tau_grid) {
    if (!(t > 0.0)) throw DomainError("lee_potential_exact: tau must be positive");
    prof.tau.push_back(t);
    prof.u.push_back(sk * std::cosh(static_cast<Real>(t)));   // f'
    prof.du.push_back(sk * std::sinh(static_cast<Real>(t)));  // f'' = f
  }
  return prof;
}

double lee_potential_residual(const ModelSpace& m, double t) {
  const int n = m.n();
  const double V = m.warp_prime(t);
  const double dV = m.warp(t);
  const double d2V = m.warp_prime(t);
  // Lap_+ V = V'' + n (f'/f) V'.
  const double lap = d2V + n * m.warp_prime(t) / m.warp(t) * dV;
  return std::abs(-lap + (n + 1) * V) / ((n + 1) * std::abs(V));
}

}  // namespace hkcce
