#pragma once

#include <stdexcept>
#include <string>

namespace hkcce {

/// Raised for arguments outside an operation's mathematical domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Fractional orders are kept away from 0 and from the resonance at 1.
inline constexpr double kGammaMin = 0.05;
inline constexpr double kGammaMax = 0.95;

/// Parameters of one fractional Q-curvature problem on a round-sphere
/// boundary with Ric = (n-1) k g.
struct QCurvParams {
  int n = 4;
  double gamma = 0.5;
  double s = 2.5;  // n/2 + gamma
  double k = 1.0;

  /// Validating constructor; throws DomainError on any violated invariant.
  static QCurvParams make(int n, double gamma, double k);

  /// s(n - s) = n^2/4 - gamma^2.
  double spectral_parameter() const { return s * (n - s); }
  /// Exponent n - s of the leading boundary branch.
  double dirichlet_exponent() const { return n - s; }
};

double gamma_fn(double x);

/// 2^{2g} Gamma(g) / Gamma(-g); negative on (0, 1).
double d_gamma(double gamma);

/// Constant of the fractional Heintze-Karcher inequality.
double hk_constant(int n, double gamma);

/// Q_{2 gamma} of the round sphere with Ric = (n-1) k g, viewed as the
/// conformal infinity of hyperbolic space.
double sphere_q_oracle(const QCurvParams& p);

/// Volume of the unit n-sphere, 2 pi^{(n+1)/2} / Gamma((n+1)/2).
double unit_sphere_volume(int n);

/// Volume of the round n-sphere with Ric = (n-1) k g.
double boundary_volume(int n, double k);

}  // namespace hkcce
