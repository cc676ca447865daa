#include "hkcce/compactification.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "hkcce/format.hpp"
#include "hkcce/special_fn.hpp"

namespace hkcce {

std::string to_string(CompactKind kind) { return kind == CompactKind::adapted ? "adapted" : "lee"; }

double tracefree_norm_sq(int n, double lambda_rad, double lambda_sph) {
  const double d = lambda_rad - lambda_sph;
  return n * d * d / (n + 1.0);
}

namespace {

constexpr double kNodeMatchTol = 1e-12;
constexpr int kExtrapolationLevels = 6;

Taylor<2> eps_jet(double e0, double e1, double e2) {
  Taylor<2> t;
  t.c = {e0, e1, 0.5 * e2};
  return t;
}

double weighted(double lhs, double rhs, std::initializer_list<double> terms) {
  double w = std::max({1.0, std::abs(lhs), std::abs(rhs)});
  for (double t : terms) w = std::max(w, std::abs(t));
  return std::abs(lhs - rhs) / w;
}

double exponent_W(const CompactifiedGeometry& g) { return g.kind == CompactKind::adapted ? 2.0 * g.gamma : 2.0; }

double scale_W(const CompactifiedGeometry& g) { return g.kind == CompactKind::adapted ? 1.0 : 0.5 * (g.n() + 1); }

}  // namespace

// ---------------------------------------------------------------------------
// Radial jets

RadialJet CompactifiedGeometry::series_jet(double tau) const {
  RadialJet j;
  j.tau = tau;
  j.from_series = true;
  if (kind == CompactKind::lee) {
    const double x = std::exp(-2.0 * tau);
    const double sech2 = 4.0 * x / ((1.0 + x) * (1.0 + x));
    const double tanh_t = -std::expm1(-2.0 * tau) / (1.0 + x);
    j.eps = eps_jet(-2.0 * x / (1.0 + x), sech2, -2.0 * sech2 * tanh_t);
    j.log_rho = -0.5 * std::log(base.k()) - (tau + std::log1p(x) - std::log(2.0));
    return j;
  }
  if (tau < 0.5) throw DomainError("series_jet: tau below the series range");
  using L = long double;
  const L m = static_cast<L>(n()) - static_cast<L>(s);
  const L log_r = std::log(static_cast<L>(base.r_center())) - static_cast<L>(tau);
  const L r = std::exp(log_r);
  const L r2 = r * r;
  const L S = static_cast<L>(scattering_value);
  const L two_gamma = 2.0L * static_cast<L>(gamma);

  // w = F(r) + S r^{2 gamma} G(r); a term c r^p has tau-derivatives (-p)^i c r^p.
  std::array<L, 4> w{};
  L w_minus_1 = 0;
  L rp = 1;
  for (std::size_t jx = 0; jx < dirichlet.coeffs.size(); ++jx) {
    const L p = 2.0L * jx;
    const L term = dirichlet.coeffs[jx] * rp;
    if (jx > 0) w_minus_1 += term;
    L d = term;
    for (int i = 0; i < 4; ++i) {
      w[i] += d;
      d *= -p;
    }
    rp *= r2;
  }
  rp = S * std::exp(two_gamma * log_r);
  for (std::size_t jx = 0; jx < neumann.coeffs.size(); ++jx) {
    const L p = two_gamma + 2.0L * jx;
    const L term = neumann.coeffs[jx] * rp;
    w_minus_1 += term;
    L d = term;
    for (int i = 0; i < 4; ++i) {
      w[i] += d;
      d *= -p;
    }
    rp *= r2;
  }
  Taylor<3> wt;
  wt.c = {static_cast<double>(w[0]), static_cast<double>(w[1]), static_cast<double>(w[2] / 2),
          static_cast<double>(w[3] / 6)};
  const double sigma0 = static_cast<double>(std::log1p(w_minus_1));
  const Taylor<3> sigma = log_with_value(wt, sigma0);
  const double md = static_cast<double>(m);
  j.eps.c = {-sigma.c[1] / md, -2.0 * sigma.c[2] / md, -3.0 * sigma.c[3] / md};
  j.log_rho = static_cast<double>(log_r) + sigma0 / md;
  return j;
}

RadialJet CompactifiedGeometry::jet(double tau) const {
  if (kind == CompactKind::lee || tau >= series_start) return series_jet(tau);
  const auto it = std::lower_bound(nodes.begin(), nodes.end(), tau - kNodeMatchTol,
                                   [](const RadialJet& a, double v) { return a.tau < v; });
  if (it == nodes.end() || std::abs(it->tau - tau) > kNodeMatchTol)
    throw DomainError("CompactifiedGeometry: tau = " + format_number(tau) + " is not a solved node");
  return *it;
}

PointData CompactifiedGeometry::at(double tau) const { return point(jet(tau)); }

PointData CompactifiedGeometry::point(const RadialJet& j) const {
  const int nn = n();
  PointData p{};
  p.tau = j.tau;
  p.t = base.t_from_tau(j.tau);
  p.r = base.r_from_tau(j.tau);
  p.log_rho = j.log_rho;
  p.rho = std::exp(j.log_rho);

  const double x = std::exp(-2.0 * j.tau);
  const double om = -std::expm1(-2.0 * j.tau);
  Taylor<2> K;
  K.c = {2.0 * x / om, -4.0 * x / (om * om), 4.0 * x * (1.0 + x) / (om * om * om)};
  const Taylor<2>& E = j.eps;
  const double eps = E.c[0];
  const double deps = E.c[1];
  const double kappa = K.c[0];
  const double dkappa = K.c[1];
  const double lp = -1.0 - eps;

  Taylor<2> Ljet;
  Ljet.c = {j.log_rho, lp, -0.5 * deps};
  const Taylor<2> OM = -(E * (E + 2.0));
  const Taylor<2> Wj = scale_W(*this) * OM * exp(Ljet * (-exponent_W(*this)));

  p.kappa = kappa;
  p.drho_dt = p.rho * lp;
  p.grad_sq = lp * lp;
  p.one_minus_grad_sq = OM.c[0];
  p.W = Wj.c[0];
  p.dW = Wj.c[1];
  p.d2W = 2.0 * Wj.c[2];

  const double k_minus_e = kappa - eps;
  p.rho_lap_rho = -deps + nn * lp * k_minus_e;
  p.rho_lap_rho_direct = -deps + nn * lp * lp + nn * (1.0 + kappa) * lp;
  p.rho_lambda_rad = -deps;
  p.rho_lambda_sph = k_minus_e * lp;
  p.rho2_tracefree_sq = tracefree_norm_sq(nn, p.rho_lambda_rad, p.rho_lambda_sph);
  p.rho2_lap_W = p.d2W + p.dW * (1.0 - (nn - 1) * eps + nn * kappa);
  p.rho_grad_rho_grad_W = lp * p.dW;
  p.rho2_J_formula = 0.5 * (2.0 * s - nn - 1) * p.one_minus_grad_sq;
  p.rho2_J_direct = 0.5 * (-(nn - 1) * dkappa - 2.0 * (1.0 + kappa) * k_minus_e - 2.0 * dkappa + 2.0 * deps -
                           (nn - 1) * k_minus_e * k_minus_e);
  p.log_volume_density = (nn + 1) * j.log_rho + nn * base.log_warp(p.t);
  return p;
}

// ---------------------------------------------------------------------------
// Builders

std::vector<double> window_taus(const ModelSpace& m, int count) {
  if (count < 2) throw DomainError("window_taus: count must be at least 2");
  const double lo = std::log(1.0 / 0.9);
  const double hi = std::log(m.r_center() / 0.05);
  std::vector<double> out(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (count - 1);
  return out;
}

std::vector<double> boundary_exponents(double gamma, int count) {
  std::vector<double> all;
  for (int a = 0; a <= 12; ++a)
    for (int b = 0; b <= 12; ++b) {
      if ((a == 0 || a == 1) && b == 0) continue;
      all.push_back(2.0 * gamma * (a - 1) + 2.0 * b);
    }
  std::sort(all.begin(), all.end());
  std::vector<double> out;
  for (double p : all) {
    if (p <= 1e-12) continue;
    if (!out.empty() && p - out.back() < 1e-9) continue;
    out.push_back(p);
    if (static_cast<int>(out.size()) == count) break;
  }
  return out;
}

double richardson_extrapolate(std::span<const double> h, std::span<const double> values,
                              std::span<const double> exponents) {
  const auto rows = static_cast<Eigen::Index>(h.size());
  const auto cols = static_cast<Eigen::Index>(exponents.size()) + 1;
  if (rows != static_cast<Eigen::Index>(values.size()) || rows < cols)
    throw DomainError("richardson_extrapolate: need at least one sample per unknown");
  Eigen::MatrixXd A(rows, cols);
  Eigen::VectorXd v(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    A(i, 0) = 1.0;
    for (Eigen::Index jx = 1; jx < cols; ++jx) A(i, jx) = std::pow(h[i], exponents[jx - 1]);
    v(i) = values[i];
  }
  const Eigen::VectorXd x = A.colPivHouseholderQr().solve(v);
  return x(0);
}

namespace {

void extrapolate_boundary(CompactifiedGeometry& g) {
  // Start at 0.05/sqrt(k), moved inward until the slowest correction r^p is below 1e-3.
  double r0 = 0.05 / std::sqrt(g.base.k());
  if (g.kind == CompactKind::adapted) r0 = std::min(r0, std::pow(1e-3, 1.0 / boundary_exponents(g.gamma, 1)[0]));
  std::vector<double> h, W, H;
  for (int i = 0; i < kExtrapolationLevels; ++i) {
    const double r = r0 / std::ldexp(1.0, i);
    const RadialJet j = g.series_jet(g.base.tau_from_r(r));
    const PointData p = g.point(j);
    h.push_back(r);
    W.push_back(p.W);
    H.push_back(g.n() * (p.kappa - j.eps.c[0]) / p.rho);
  }
  if (g.kind == CompactKind::lee) {
    const std::vector<double> ex{2.0, 4.0, 6.0, 8.0, 10.0};
    g.boundary_W_extrapolated = richardson_extrapolate(h, W, ex);
    g.mean_curvature_extrapolated = std::numeric_limits<double>::quiet_NaN();
    return;
  }
  const std::vector<double> ex = boundary_exponents(g.gamma, kExtrapolationLevels - 1);
  g.boundary_W_extrapolated = richardson_extrapolate(h, W, ex);
  if (std::abs(g.gamma - 0.5) < 1e-12) {
    const std::vector<double> hex{1.0, 2.0, 3.0, 4.0, 5.0};
    g.mean_curvature_extrapolated = richardson_extrapolate(h, H, hex);
  } else {
    g.mean_curvature_extrapolated = std::numeric_limits<double>::quiet_NaN();
  }
}

}  // namespace

CompactifiedGeometry build_adapted(const ModelSpace& m, const ScatteringResult& sr, const RadialProfile& profile) {
  if (sr.params.n != m.n() || std::abs(sr.params.k - m.k()) > 1e-15 * m.k())
    throw DomainError("build_adapted: scattering result belongs to a different model");
  if (!(sr.c1 > 0)) throw DomainError("build_adapted: leading coefficient c1 must be positive");
  CompactifiedGeometry g;
  g.kind = CompactKind::adapted;
  g.base = m;
  g.gamma = sr.params.gamma;
  g.s = sr.params.s;
  g.q_value = sr.q_value;
  g.scattering_value = sr.scattering_value;
  g.series_start = sr.T_prime;
  g.dirichlet = sr.dirichlet;
  g.neumann = sr.neumann;
  g.log_c1 = static_cast<double>(std::log(sr.c1));

  const long double mu = static_cast<long double>(m.n()) - static_cast<long double>(g.s);
  const long double log_c1 = std::log(sr.c1);
  for (std::size_t i = 0; i < profile.size(); ++i) {
    const long double u = profile.u[i];
    if (!(u > 0)) throw DomainError("build_adapted: u_s is not positive at tau = " + format_number(profile.tau[i]));
    if (profile.tau[i] >= g.series_start) continue;
    const long double a = profile.du[i] / u;
    const long double b = profile.d2u(i) / u;
    const long double c = profile.d3u(i) / u;
    RadialJet j;
    j.tau = profile.tau[i];
    j.log_rho = static_cast<double>((std::log(u) - log_c1) / mu);
    j.eps = eps_jet(static_cast<double>(-1.0L - a / mu), static_cast<double>(-(b - a * a) / mu),
                    static_cast<double>(-(c - 3.0L * a * b + 2.0L * a * a * a) / mu));
    g.nodes.push_back(j);
  }
  g.boundary_W_expected = -4.0 * g.gamma / d_gamma(g.gamma) * g.q_value;
  extrapolate_boundary(g);
  return g;
}

CompactifiedGeometry build_adapted(const ModelSpace& m, double gamma, const ScatteringOptions& opts,
                                   std::span<const double> extra_taus) {
  const QCurvParams p = QCurvParams::make(m.n(), gamma, m.k());
  const double T_prime = opts.T - 2.0;
  if (!(T_prime > kTaylorStart)) throw DomainError("build_adapted: T must exceed 2");
  std::vector<double> grid;
  for (double t : window_taus(m, kWindowSamples))
    if (t < T_prime) grid.push_back(t);
  for (double t : extra_taus) {
    if (!(t > 0.0)) throw DomainError("build_adapted: tau values must be positive");
    if (t < T_prime) grid.push_back(t);
  }
  grid.push_back(T_prime);
  grid.push_back(opts.T);
  std::sort(grid.begin(), grid.end());
  std::vector<double> uniq;
  for (double t : grid)
    if (uniq.empty() || t - uniq.back() > kNodeMatchTol) uniq.push_back(t);
  const RadialProfile prof = solve_interior(p, opts.ode_tol, uniq);
  const ScatteringResult sr = match_and_q(prof, p, opts.T, opts.order);
  return build_adapted(m, sr, prof);
}

CompactifiedGeometry build_lee(const ModelSpace& m) {
  CompactifiedGeometry g;
  g.kind = CompactKind::lee;
  g.base = m;
  g.gamma = 0.0;
  g.s = m.n() + 1.0;
  g.q_value = 0.5 * m.n() * m.k();  // J-hat
  g.series_start = 0.0;
  g.boundary_W_expected = (m.n() + 1.0) / m.n() * g.q_value;
  extrapolate_boundary(g);
  return g;
}

// ---------------------------------------------------------------------------
// Checks

HessianSplit hessian_split(const CompactifiedGeometry& g, std::span<const double> taus) {
  HessianSplit hs;
  const int n = g.n();
  for (double tau : taus) {
    const PointData p = g.at(tau);
    const double lr = p.rho_lambda_rad / p.rho;
    const double ls = p.rho_lambda_sph / p.rho;
    const double lap = lr + n * ls;
    const double direct = p.rho_lap_rho_direct / p.rho;
    hs.tau.push_back(tau);
    hs.lambda_rad.push_back(lr);
    hs.lambda_sph.push_back(ls);
    hs.laplacian.push_back(lap);
    hs.laplacian_direct.push_back(direct);
    hs.tracefree_sq.push_back(tracefree_norm_sq(n, lr, ls));
    if (std::abs(direct) > 1e-6) hs.max_trace_mismatch = std::max(hs.max_trace_mismatch, std::abs(lap - direct) / std::abs(direct));
  }
  if (hs.max_trace_mismatch > 1e-6)
    throw ConsistencyError("hessian_split: trace identity violated by " + format_number(hs.max_trace_mismatch));
  return hs;
}

namespace {

struct PointResiduals {
  double rho, W, J;
};

PointResiduals point_residuals(const CompactifiedGeometry& g, const PointData& p) {
  const int n = g.n();
  PointResiduals out{};
  const double rhs_rho = -g.s * p.one_minus_grad_sq;
  out.rho = weighted(p.rho_lap_rho, rhs_rho, {});

  if (g.kind == CompactKind::adapted) {
    // Identity multiplied by rho^{2 - 2 gamma}.
    const double g2 = 2.0 * g.gamma;
    const double c = n * (n + g2) * (g2 - 1.0) / (2.0 * (n + 1));
    const double pw = std::exp(-g2 * p.log_rho);
    const double t1 = pw * p.rho2_lap_W;
    const double t2 = pw * (g2 - 1.0) * p.rho_grad_rho_grad_W;
    const double t3 = -2.0 * pw * pw * p.rho2_tracefree_sq;
    const double t4 = c * p.W * p.W;
    out.W = weighted(t1 + t2, t3 + t4, {t1, t2, t3, t4});
  } else {
    // Identity multiplied by rho^2.
    const double t1 = p.rho2_lap_W;
    const double t2 = -(n - 1) * p.rho_grad_rho_grad_W;
    const double t3 = -(n + 1) * p.rho2_tracefree_sq / (p.rho * p.rho);
    out.W = weighted(t1 + t2, t3, {t1, t2, t3});
  }
  const double inv_rho2 = 1.0 / (p.rho * p.rho);
  out.J = weighted(p.rho2_J_formula * inv_rho2, p.rho2_J_direct * inv_rho2, {});
  return out;
}

}  // namespace

ResidualSuite residual_suite(const CompactifiedGeometry& g, int samples) {
  ResidualSuite rs;
  rs.kind = g.kind;
  rs.rho.name = g.kind == CompactKind::adapted ? "res_rho" : "res_rho_lee";
  rs.W.name = g.kind == CompactKind::adapted ? "res_T" : "res_J";
  rs.J_crosscheck.name = "J_crosscheck";
  rs.min_W = std::numeric_limits<double>::infinity();
  const std::vector<double> taus = window_taus(g.base, samples);
  for (double tau : taus) {
    const PointData p = g.at(tau);
    const PointResiduals r = point_residuals(g, p);
    for (auto* prof : {&rs.rho, &rs.W, &rs.J_crosscheck}) prof->tau.push_back(tau);
    rs.rho.residual.push_back(r.rho);
    rs.W.residual.push_back(r.W);
    rs.J_crosscheck.residual.push_back(r.J);
    rs.rho.sup = std::max(rs.rho.sup, r.rho);
    rs.W.sup = std::max(rs.W.sup, r.W);
    rs.J_crosscheck.sup = std::max(rs.J_crosscheck.sup, r.J);
    rs.min_W = std::min(rs.min_W, p.W);
  }
  rs.max_trace_mismatch = hessian_split(g, taus).max_trace_mismatch;
  rs.boundary_W_extrapolated = g.boundary_W_extrapolated;
  rs.boundary_W_expected = g.boundary_W_expected;
  rs.boundary_rel_err = std::abs(g.boundary_W_extrapolated - g.boundary_W_expected) / std::abs(g.boundary_W_expected);
  return rs;
}

std::string profile_csv(const CompactifiedGeometry& g, std::span<const double> taus) {
  std::ostringstream os;
  os << "t,r,rho,drho,grad_sq,T_or_J,res_rho,res_T_or_J\n";
  for (double tau : taus) {
    const PointData p = g.at(tau);
    const PointResiduals r = point_residuals(g, p);
    os << format_number(p.t) << ',' << format_number(p.r) << ',' << format_number(p.rho) << ','
       << format_number(p.drho_dt) << ',' << format_number(p.grad_sq) << ',' << format_number(p.W) << ','
       << format_number(r.rho) << ',' << format_number(r.W) << '\n';
  }
  return os.str();
}

}  // namespace hkcce
