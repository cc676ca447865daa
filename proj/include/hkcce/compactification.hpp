#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hkcce/model_geometry.hpp"
#include "hkcce/scattering.hpp"
#include "hkcce/taylor.hpp"

namespace hkcce {

enum class CompactKind { adapted, lee };

std::string to_string(CompactKind kind);

/// Raised when two routes to the same geometric quantity disagree.
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Radial data of rho at one tau. With l = log rho,
///   eps = -1 - l'  (so |grad rho|^2 = (1 + eps)^2 and eps -> 0 at the boundary).
/// Derivatives are with respect to tau.
struct RadialJet {
  double tau = 0.0;
  double log_rho = 0.0;
  Taylor<2> eps;  // eps, eps', eps''/2 as normalized coefficients
  bool from_series = false;
};

/// Everything the identities need at one point. Names starting with rho_ or
/// rho2_ carry the rho power that keeps them bounded at the boundary.
struct PointData {
  double tau, t, r;
  double rho;
  double log_rho;
  double drho_dt;            // rho l'
  double grad_sq;            // |grad rho|^2
  double one_minus_grad_sq;  // computed as -eps (2 + eps)
  double W, dW, d2W;         // T_s (adapted) or Jbar_L (lee) and tau-derivatives
  double kappa;              // coth(tau) - 1
  double rho_lap_rho;        // rho * Lap rho, eps/kappa route
  double rho_lap_rho_direct; // rho * (alpha b^n)^{-1} (b^n rho'/alpha)', l'/coth route
  double rho_lambda_rad;     // rho * radial Hessian eigenvalue
  double rho_lambda_sph;     // rho * spherical Hessian eigenvalue
  double rho2_tracefree_sq;  // rho^2 |Hess rho - Lap rho/(n+1) g|^2
  double rho2_lap_W;         // rho^2 Lap W
  double rho_grad_rho_grad_W;// rho^2 * rho^{-1} <grad rho, grad W> = l' W'
  double rho2_J_formula;     // rho^2 Jbar from (2s-n-1)/2 (1-|grad rho|^2)/rho^2
  double rho2_J_direct;      // rho^2 R/(2n) from the warped-product curvature
  double log_volume_density; // log(rho^{n+1} f^n), dV = e^{..} dtau dS
};

struct HessianSplit {
  std::vector<double> tau;
  std::vector<double> lambda_rad;
  std::vector<double> lambda_sph;
  std::vector<double> laplacian;         // lambda_rad + n lambda_sph
  std::vector<double> laplacian_direct;  // radial Laplacian formula
  std::vector<double> tracefree_sq;      // n/(n+1) (lambda_rad - lambda_sph)^2
  double max_trace_mismatch = 0.0;
};

/// n/(n+1) (a - b)^2: squared norm of the trace-free part of diag(a, b I_n).
double tracefree_norm_sq(int n, double lambda_rad, double lambda_sph);

class CompactifiedGeometry {
 public:
  CompactKind kind = CompactKind::adapted;
  ModelSpace base{4, 1.0};
  double gamma = 0.5;  // lee: unused
  double s = 2.5;      // n/2 + gamma, or n + 1
  double q_value = 0.0;
  double scattering_value = 0.0;
  double series_start = 0.0;  // tau beyond which the boundary series is used
  std::vector<RadialJet> nodes;  // ODE-region nodes, ascending
  double log_c1 = 0.0;

  double boundary_W_extrapolated = 0.0;
  double boundary_W_expected = 0.0;  // -(4 gamma/d_gamma) Q, or (n+1)/n J-hat
  double mean_curvature_extrapolated = 0.0;  // Hbar at the boundary; NaN unless gamma = 1/2

  int n() const { return base.n(); }
  /// Radial jet at tau: stored node in the ODE region, series or closed form otherwise.
  RadialJet jet(double tau) const;
  /// Series or closed-form evaluation; throws in the ODE region of an adapted build.
  RadialJet series_jet(double tau) const;
  PointData at(double tau) const;
  PointData point(const RadialJet& j) const;

  /// Boundary branches for the adapted kind.
  FrobeniusBranch dirichlet;
  FrobeniusBranch neumann;
};

/// tau values covering the interior window r in [0.05, 0.9 r_center].
std::vector<double> window_taus(const ModelSpace& m, int count);

/// Adapted compactification from a matched profile. The profile must cover
/// every tau below sr.T_prime that callers will query; above it the
/// boundary series is used.
CompactifiedGeometry build_adapted(const ModelSpace& m, const ScatteringResult& sr, const RadialProfile& profile);

/// Solves the scattering problem on the window grid plus `extra_taus`
/// and builds the adapted compactification.
CompactifiedGeometry build_adapted(const ModelSpace& m, double gamma, const ScatteringOptions& opts,
                                   std::span<const double> extra_taus = {});

/// Lee compactification, rho_L = 1/f', in closed form.
CompactifiedGeometry build_lee(const ModelSpace& m);

HessianSplit hessian_split(const CompactifiedGeometry& g, std::span<const double> taus);

/// Fits v(h) = v0 + sum_j c_j h^{p_j} through the samples and returns v0.
double richardson_extrapolate(std::span<const double> h, std::span<const double> values,
                              std::span<const double> exponents);

/// Smallest `count` distinct positive exponents 2 gamma (a - 1) + 2 b, (a, b) != (0,0), (1,0).
std::vector<double> boundary_exponents(double gamma, int count);

struct ResidualProfile {
  std::string name;
  std::vector<double> tau;
  std::vector<double> residual;
  double sup = 0.0;
};

struct ResidualSuite {
  CompactKind kind = CompactKind::adapted;
  ResidualProfile rho;          // Lap rho identity
  ResidualProfile W;            // T_s or Jbar_L identity
  ResidualProfile J_crosscheck; // Jbar formula against scalar curvature
  double min_W = 0.0;           // positivity of T_s or Jbar_L over the window
  double max_trace_mismatch = 0.0;
  double boundary_W_extrapolated = 0.0;
  double boundary_W_expected = 0.0;
  double boundary_rel_err = 0.0;
};

inline constexpr int kWindowSamples = 200;

/// Residuals weighted by max(1, largest term) over the interior window.
ResidualSuite residual_suite(const CompactifiedGeometry& g, int samples = kWindowSamples);

/// CSV with columns t,r,rho,drho,grad_sq,T_or_J,res_rho,res_T_or_J.
std::string profile_csv(const CompactifiedGeometry& g, std::span<const double> taus);

}  // namespace hkcce
