#include <doctest.h>

#include <cmath>
#include <vector>

#include "hkcce/scattering.hpp"

using namespace hkcce;
using doctest::Approx;
using jets::Rational;

TEST_CASE("first Frobenius coefficient, exact") {
  // u2 = (n - 2 gamma) J-hat / (8 (1 - gamma)) with J-hat = n k / 2.
  const int n = 5;
  const Rational g(1, 3), k(2, 7);
  const auto a = frobenius_dirichlet_exact(n, g, k, 3);
  const Rational jhat = Rational(n) * k / 2;
  CHECK(a[0] == Rational(1));
  CHECK(a[1] == (Rational(n) - 2 * g) * jhat / (8 * (1 - g)));
}

TEST_CASE("floating and exact Frobenius coefficients agree") {
  const QCurvParams p = QCurvParams::make(4, 0.25, 1.0);
  const FrobeniusBranch b = frobenius_branch(p, p.dirichlet_exponent(), 8);
  const auto exact = frobenius_dirichlet_exact(4, Rational(1, 4), Rational(1), 8);
  for (std::size_t j = 0; j < exact.size(); ++j)
    CHECK(static_cast<double>(b.coeffs[j]) == Approx(static_cast<double>(exact[j])).epsilon(1e-15));
}

TEST_CASE("Frobenius branch guards") {
  const QCurvParams p = QCurvParams::make(4, 0.5, 1.0);
  CHECK_THROWS_AS(frobenius_branch(p, p.s, 13), DomainError);
  CHECK_THROWS_AS(frobenius_branch(p, 0.7, 4), DomainError);
  // Resonance: mu + 2 is the other indicial root when 2 gamma = 2.
  CHECK_THROWS_AS(frobenius_recursion<double>(4, 3.0, 1.0, 1.0, 2), ResonanceError);
}

TEST_CASE("interior Taylor start") {
  const auto b = interior_taylor_coefficients(4, 3.75, 3);
  CHECK(static_cast<double>(b[0]) == 1.0);
  CHECK(static_cast<double>(b[1]) == Approx(-3.75 / 10.0).epsilon(1e-15));
  // Next order: b4 = -b2 (lambda + 2n/3) / (4n + 12).
  CHECK(static_cast<double>(b[2]) == Approx(0.375 * (3.75 + 8.0 / 3.0) / 28.0).epsilon(1e-15));
}

TEST_CASE("interior solver reproduces cosh for s = n + 1") {
  const std::vector<double> grid{1e-4, 0.5, 2.0, 6.0};
  const RadialProfile prof = solve_interior(5, 6.0, 1e-12, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(static_cast<double>(prof.u[i]) == Approx(std::cosh(grid[i])).epsilon(1e-10));
    CHECK(static_cast<double>(prof.du[i]) == Approx(std::sinh(grid[i])).epsilon(1e-10));
    CHECK(static_cast<double>(prof.d2u(i)) == Approx(std::cosh(grid[i])).epsilon(1e-9));
  }
  CHECK(prof.index_of(2.0) == 2);
  CHECK_THROWS(prof.index_of(2.5));
}

TEST_CASE("Q-curvature matches the gamma-ratio oracle") {
  for (int n : {4, 5, 6})
    for (double g : {0.05, 0.25, 0.5, 0.75, 0.95})
      for (double k : {0.5, 1.0, 2.0}) {
        const QCurvParams p = QCurvParams::make(n, g, k);
        const ScatteringResult sr = q_curvature(p);
        CHECK(sr.q_value == Approx(sphere_q_oracle(p)).epsilon(1e-8));
        CHECK(sr.consistency_gap < 1e-8);
        CHECK(sr.condition_estimate < kMaxCondition);
        CHECK(sr.q_value > 0.0);
      }
}

TEST_CASE("Q_1 = 1 on the unit model") {
  const ScatteringResult sr = q_curvature(QCurvParams::make(4, 0.5, 1.0));
  CHECK(sr.q_value == Approx(1.0).epsilon(1e-8));
  CHECK(sr.T == 5.0);
  CHECK(sr.T_prime == 3.0);
}

TEST_CASE("scaling Q(k) = k^gamma Q(1)") {
  for (double g : {0.25, 0.6}) {
    const double q1 = q_curvature(QCurvParams::make(5, g, 1.0)).q_value;
    for (double k : {0.5, 2.0, 4.0})
      CHECK(q_curvature(QCurvParams::make(5, g, k)).q_value / q1 == Approx(std::pow(k, g)).epsilon(2e-8));
  }
}

TEST_CASE("matching rejects a truncated series") {
  // At T = 3 (T' = 1) the order-12 series is not converged for large n.
  const QCurvParams p = QCurvParams::make(12, 0.5, 1.0);
  CHECK_THROWS_AS(q_curvature(p, ScatteringOptions{1e-12, 3.0, 12}), MatchingError);
}

TEST_CASE("Lee potential is an exact eigenfunction") {
  const ModelSpace m(4, 2.0);
  for (double t : {1.0, 3.0, 8.0}) CHECK(lee_potential_residual(m, m.t0() + t) < 1e-13);
  const std::vector<double> taus{0.5, 1.0};
  const RadialProfile v = lee_potential_exact(m, taus);
  CHECK(static_cast<double>(v.u[1]) == Approx(std::sqrt(2.0) * std::cosh(1.0)).epsilon(1e-14));
}
