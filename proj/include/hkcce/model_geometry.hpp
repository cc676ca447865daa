#pragma once

#include <vector>

namespace hkcce {

/// Hyperbolic space written over a round sphere with Ric = (n-1) k g:
///   g_+ = dt^2 + f(t)^2 g,  f(t) = (e^t - k e^{-t}) / 2,  t > t0 = ln(k)/2,
/// with normal-form defining function r = 2 e^{-t}, so that
///   g_+ = r^{-2} (dr^2 + phi(r)^2 g),  phi(r) = 1 - k r^2 / 4.
/// tau = t - t0 is the geodesic distance from the center.
class ModelSpace {
 public:
  ModelSpace(int n, double k);

  int n() const { return n_; }
  double k() const { return k_; }
  double t0() const { return t0_; }
  /// r at the center, 2 / sqrt(k).
  double r_center() const;

  double tau_from_t(double t) const { return t - t0_; }
  double t_from_tau(double tau) const { return tau + t0_; }
  double r_from_t(double t) const;
  double t_from_r(double r) const;
  double r_from_tau(double tau) const { return r_from_t(t_from_tau(tau)); }
  double tau_from_r(double r) const { return tau_from_t(t_from_r(r)); }

  double warp(double t) const;        // f
  double warp_prime(double t) const;  // f'
  /// ln f(t), accurate for large t.
  double log_warp(double t) const;
  double phi(double r) const;
  double phi_prime(double r) const;

 private:
  int n_;
  double k_;
  double t0_;
};

struct Frame {
  double t;
  double f;
  double f_prime;
  double r;
  double phi;
  double phi_prime;
  double area_density;    // f^n: dS on {t} = f^n dS_g
  double volume_density;  // f^n: dV_{g+} = f^n dt dS_g
};

Frame frame(const ModelSpace& m, double t);

struct EinsteinResiduals {
  double max_radial = 0.0;     // |f''/f - 1|
  double max_spherical = 0.0;  // |f f'' + (n-1)(f'^2 - k) - n f^2| / max(1, f'^2 + f^2)
  int samples = 0;
};

/// Einstein residuals of dt^2 + f^2 g at the given t values.
EinsteinResiduals model_validate(const ModelSpace& m, const std::vector<double>& t_values);
/// Same at `sample_count` points spread over tau in (0, 10].
EinsteinResiduals model_validate(const ModelSpace& m, int sample_count);

/// Mean curvature of {r = const} with respect to g_+, n f'(t)/f(t).
double mean_curvature_exact(const ModelSpace& m, double r);

}  // namespace hkcce
