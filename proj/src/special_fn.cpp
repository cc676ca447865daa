#include "hkcce/special_fn.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace hkcce {

namespace {

// Lanczos coefficients for g = 7, nine terms.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

double lanczos_positive(double x) {
  // Gamma(x) for x >= 0.5, evaluated as Gamma(z + 1) with z = x - 1.
  const double z = x - 1.0;
  double sum = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) sum += kLanczos[i] / (z + static_cast<double>(i));
  const double t = z + kLanczosG + 0.5;
  // t^{z+1/2} e^{-t} split in two halves so that |x| near 30 does not overflow early.
  const double half = std::pow(t, 0.5 * (z + 0.5));
  return std::sqrt(2.0 * std::numbers::pi) * half * (half * std::exp(-t)) * sum;
}

}  // namespace

QCurvParams QCurvParams::make(int n, double gamma, double k) {
  if (n < 3) throw DomainError("boundary dimension must satisfy n >= 3, got " + std::to_string(n));
  if (!(gamma >= kGammaMin && gamma <= kGammaMax))
    throw DomainError("gamma must lie in [0.05, 0.95], got " + std::to_string(gamma));
  if (!(k > 0.0) || !std::isfinite(k)) throw DomainError("k must be positive, got " + std::to_string(k));
  QCurvParams p;
  p.n = n;
  p.gamma = gamma;
  p.s = 0.5 * n + gamma;
  p.k = k;
  return p;
}

double gamma_fn(double x) {
  if (!std::isfinite(x)) throw DomainError("gamma_fn: non-finite argument");
  if (x <= 0.0 && x == std::floor(x)) throw DomainError("gamma_fn: pole at nonpositive integer " + std::to_string(x));
  if (x < 0.5) {
    // Reflection: Gamma(x) Gamma(1 - x) = pi / sin(pi x).
    return std::numbers::pi / (std::sin(std::numbers::pi * x) * lanczos_positive(1.0 - x));
  }
  return lanczos_positive(x);
}

double d_gamma(double gamma) {
  if (!(gamma > 0.0 && gamma < 1.0)) throw DomainError("d_gamma: gamma must lie in (0, 1)");
  return std::pow(2.0, 2.0 * gamma) * gamma_fn(gamma) / gamma_fn(-gamma);
}

double hk_constant(int n, double gamma) {
  if (n < 3) throw DomainError("hk_constant: n >= 3 required");
  if (!(gamma > 0.0 && gamma < 1.0)) throw DomainError("hk_constant: gamma must lie in (0, 1)");
  const double a = n + 2.0 * gamma;
  const double power = (1.0 - gamma) / gamma;
  return a * a / (4.0 * gamma * (n + 1.0)) * std::pow(-4.0 * gamma / d_gamma(gamma), power);
}

double sphere_q_oracle(const QCurvParams& p) {
  const double half = 0.5 * p.n;
  return std::pow(p.k, p.gamma) * (2.0 / (p.n - 2.0 * p.gamma)) * gamma_fn(half + p.gamma) /
         gamma_fn(half - p.gamma);
}

double unit_sphere_volume(int n) {
  const double m = 0.5 * (n + 1);
  return 2.0 * std::pow(std::numbers::pi, m) / gamma_fn(m);
}

double boundary_volume(int n, double k) { return std::pow(k, -0.5 * n) * unit_sphere_volume(n); }

}  // namespace hkcce
