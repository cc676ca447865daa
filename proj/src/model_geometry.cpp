#include "hkcce/model_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hkcce/special_fn.hpp"

namespace hkcce {

ModelSpace::ModelSpace(int n, double k) : n_(n), k_(k), t0_(0.5 * std::log(k)) {
  if (n < 3) throw DomainError("ModelSpace: n >= 3 required");
  if (!(k > 0.0) || !std::isfinite(k)) throw DomainError("ModelSpace: k must be positive");
}

double ModelSpace::r_center() const { return 2.0 / std::sqrt(k_); }

double ModelSpace::r_from_t(double t) const { return 2.0 * std::exp(-t); }

double ModelSpace::t_from_r(double r) const {
  if (!(r > 0.0)) throw DomainError("t_from_r: r must be positive");
  return std::log(2.0 / r);
}

double ModelSpace::warp(double t) const { return 0.5 * (std::exp(t) - k_ * std::exp(-t)); }

double ModelSpace::warp_prime(double t) const { return 0.5 * (std::exp(t) + k_ * std::exp(-t)); }

double ModelSpace::log_warp(double t) const {
  // f = sqrt(k) sinh(tau) = (sqrt(k)/2) e^tau (1 - e^{-2 tau}).
  const double tau = t - t0_;
  return 0.5 * std::log(k_) - std::log(2.0) + tau + std::log(-std::expm1(-2.0 * tau));
}

double ModelSpace::phi(double r) const { return 1.0 - 0.25 * k_ * r * r; }

double ModelSpace::phi_prime(double r) const { return -0.5 * k_ * r; }

Frame frame(const ModelSpace& m, double t) {
  if (!(t > m.t0())) throw DomainError("frame: t must exceed the center t0 = " + std::to_string(m.t0()));
  Frame fr{};
  fr.t = t;
  fr.f = m.warp(t);
  fr.f_prime = m.warp_prime(t);
  fr.r = m.r_from_t(t);
  fr.phi = m.phi(fr.r);
  fr.phi_prime = m.phi_prime(fr.r);
  fr.area_density = std::pow(fr.f, m.n());
  fr.volume_density = fr.area_density;
  return fr;
}

EinsteinResiduals model_validate(const ModelSpace& m, const std::vector<double>& t_values) {
  EinsteinResiduals out;
  const int n = m.n();
  for (double t : t_values) {
    const double f = m.warp(t);
    const double fp = m.warp_prime(t);
    // Second derivative from the exponential form, not from f'' = f.
    const double fpp = 0.5 * (std::exp(t) - m.k() * std::exp(-t));
    const double radial = std::abs(fpp / f - 1.0);
    const double spherical = std::abs(f * fpp + (n - 1) * (fp * fp - m.k()) - n * f * f) /
                             std::max(1.0, fp * fp + f * f);
    out.max_radial = std::max(out.max_radial, radial);
    out.max_spherical = std::max(out.max_spherical, spherical);
    ++out.samples;
  }
  return out;
}

EinsteinResiduals model_validate(const ModelSpace& m, int sample_count) {
  std::vector<double> ts;
  ts.reserve(static_cast<std::size_t>(std::max(sample_count, 0)));
  for (int i = 1; i <= sample_count; ++i) ts.push_back(m.t0() + 10.0 * i / sample_count);
  return model_validate(m, ts);
}

double mean_curvature_exact(const ModelSpace& m, double r) {
  if (!(r > 0.0 && r < m.r_center())) throw DomainError("mean_curvature_exact: r outside (0, 2/sqrt(k))");
  // n (1 - r phi'/phi) = n f'/f at t = ln(2/r).
  return m.n() * (1.0 - r * m.phi_prime(r) / m.phi(r));
}

}  // namespace hkcce
