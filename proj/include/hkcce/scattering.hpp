#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hkcce/jet_algebra.hpp"
#include "hkcce/model_geometry.hpp"
#include "hkcce/ode.hpp"
#include "hkcce/special_fn.hpp"

namespace hkcce {

class ResonanceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MatchingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Even Frobenius coefficients a_{2j} (j = 0..order, a_0 = 1) of the branch
/// r^mu sum_j a_{2j} r^{2j} of
///   r^2 u'' + (1-n) r u' + n r^2 (phi'/phi) u' + lambda u = 0,  phi = 1 - k r^2/4.
/// Works for any field type; the indicial factor at step 2j is
/// P(mu + 2j) = (mu+2j)^2 - n (mu+2j) + lambda.
template <class T>
std::vector<T> frobenius_recursion(int n, const T& lambda, const T& k, const T& mu, int order) {
  std::vector<T> a(static_cast<std::size_t>(order) + 1, T(0));
  a[0] = T(1);
  const T quarter_k = k / T(4);
  const T half_nk = T(n) * k / T(2);
  for (int m = 1; m <= order; ++m) {
    const T e = mu + T(2 * m);
    const T indicial = e * e - T(n) * e + lambda;
    if (indicial == T(0)) throw ResonanceError("Frobenius recursion: vanishing indicial factor at r^{mu+" +
                                               std::to_string(2 * m) + "}");
    T acc(0);
    T weight(1);  // (k/4)^{m-1-j}, built from j = m-1 downwards
    for (int j = m - 1; j >= 0; --j) {
      acc += weight * (mu + T(2 * j)) * a[static_cast<std::size_t>(j)];
      weight *= quarter_k;
    }
    a[static_cast<std::size_t>(m)] = half_nk * acc / indicial;
  }
  return a;
}

struct FrobeniusBranch {
  double mu = 0.0;
  std::vector<Real> coeffs;  // a_{2j}

  /// Sum_j a_{2j} r^{2j}.
  Real series(Real r) const;
  /// r d/dr of the series part.
  Real series_euler(Real r) const;
  Real value(Real r) const;
  /// d/dr of r^mu times the series.
  Real derivative(Real r) const;
  /// |a_{2J} r^{2J}| for the last retained coefficient.
  Real last_term(Real r) const;
};

FrobeniusBranch frobenius_branch(int n, double s, double k, double mu, int order);
FrobeniusBranch frobenius_branch(const QCurvParams& p, double mu, int order);

/// Exact rational coefficients for rational (n, gamma, k) and mu = n/2 - gamma.
std::vector<jets::Rational> frobenius_dirichlet_exact(int n, const jets::Rational& gamma, const jets::Rational& k,
                                                      int order);

/// Radial solution of u'' + n coth(tau) u' + lambda u = 0, u(0) = 1, u'(0) = 0.
struct RadialProfile {
  int n = 0;
  double s = 0.0;
  double lambda = 0.0;  // s (n - s)
  std::vector<double> tau;
  std::vector<Real> u;
  std::vector<Real> du;

  std::size_t size() const { return tau.size(); }
  /// Second derivative from the ODE closure.
  Real d2u(std::size_t i) const;
  /// Third derivative from the differentiated closure.
  Real d3u(std::size_t i) const;
  /// Index of the grid point equal to tau (within 1e-12), or throws.
  std::size_t index_of(double tau_value) const;
};

inline constexpr double kTaylorStart = 1e-3;

/// Even Taylor coefficients b_{2j} (j = 0..terms-1) of the regular solution at tau = 0.
std::vector<Real> interior_taylor_coefficients(int n, double lambda, int terms);

/// Integrates outward and reports the solution exactly at every grid point
/// (ascending, positive). Points below the Taylor start use the series.
RadialProfile solve_interior(int n, double s, double tol, std::span<const double> grid);
RadialProfile solve_interior(const QCurvParams& p, double tol, std::span<const double> grid);

struct ScatteringResult {
  QCurvParams params;
  Real c1 = 0;
  Real c2 = 0;
  double scattering_value = 0.0;  // S(s)1 = c2 / c1
  double q_value = 0.0;
  double condition_estimate = 0.0;
  double consistency_gap = 0.0;
  double T = 0.0;
  double T_prime = 0.0;
  double truncation_estimate = 0.0;
  FrobeniusBranch dirichlet;  // leading exponent n - s
  FrobeniusBranch neumann;    // leading exponent s
};

inline constexpr double kDefaultMatchT = 5.0;
inline constexpr int kDefaultFrobeniusOrder = 12;
inline constexpr double kMaxCondition = 1e12;

/// Matches u = c1 U1 + c2 U2 at tau = T and again at T - 2; both must be grid points.
ScatteringResult match_and_q(const RadialProfile& profile, const QCurvParams& p, double T, int order,
                             double truncation_tol = 1e-14);

struct ScatteringOptions {
  double ode_tol = 1e-12;
  double T = kDefaultMatchT;
  int order = kDefaultFrobeniusOrder;
};

/// solve_interior on {T-2, T} followed by match_and_q.
ScatteringResult q_curvature(const QCurvParams& p, const ScatteringOptions& opts = {});

/// V = f'(t) on the tau grid: the s = n+1 eigenfunction with r V -> 1.
RadialProfile lee_potential_exact(const ModelSpace& m, std::span<const double> tau_grid);
/// -Lap_+ V + (n+1) V at t, relative to (n+1) V.
double lee_potential_residual(const ModelSpace& m, double t);

}  // namespace hkcce
