#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hkcce/special_fn.hpp"

using namespace hkcce;
using doctest::Approx;

TEST_CASE("gamma function values") {
  CHECK(gamma_fn(5.0) == Approx(24.0).epsilon(1e-14));
  CHECK(gamma_fn(0.5) == Approx(std::sqrt(std::numbers::pi)).epsilon(1e-14));
  CHECK(gamma_fn(-0.5) == Approx(-2.0 * std::sqrt(std::numbers::pi)).epsilon(1e-14));
}

TEST_CASE("d_gamma is negative on (0,1) and equals -1 at one half") {
  CHECK(d_gamma(0.5) == Approx(-1.0).epsilon(1e-14));
  for (double g : {0.05, 0.25, 0.75, 0.95}) CHECK(d_gamma(g) < 0.0);
}

TEST_CASE("Heintze-Karcher constant at gamma = 1/2 is n + 1") {
  for (int n : {3, 4, 5, 6}) CHECK(hk_constant(n, 0.5) == Approx(n + 1.0).epsilon(1e-14));
}

TEST_CASE("sphere Q oracle") {
  // Q_1 = sqrt(k) for any n.
  for (int n : {4, 5, 6})
    for (double k : {0.5, 1.0, 4.0})
      CHECK(sphere_q_oracle(QCurvParams::make(n, 0.5, k)) == Approx(std::sqrt(k)).epsilon(1e-14));
  // Scaling k^gamma.
  const double q1 = sphere_q_oracle(QCurvParams::make(5, 0.25, 1.0));
  const double q2 = sphere_q_oracle(QCurvParams::make(5, 0.25, 2.0));
  CHECK(q2 / q1 == Approx(std::pow(2.0, 0.25)).epsilon(1e-14));
}

TEST_CASE("sphere volumes") {
  CHECK(unit_sphere_volume(4) == Approx(8.0 * std::numbers::pi * std::numbers::pi / 3.0).epsilon(1e-14));
  CHECK(unit_sphere_volume(5) == Approx(std::pow(std::numbers::pi, 3)).epsilon(1e-14));
  CHECK(boundary_volume(4, 4.0) == Approx(unit_sphere_volume(4) / 16.0).epsilon(1e-14));
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(QCurvParams::make(4, 0.99, 1.0), DomainError);
  CHECK_THROWS_AS(QCurvParams::make(4, 0.01, 1.0), DomainError);
  CHECK_THROWS_AS(QCurvParams::make(4, 0.5, -1.0), DomainError);
  CHECK_THROWS_AS(QCurvParams::make(2, 0.5, 1.0), DomainError);
  const QCurvParams p = QCurvParams::make(4, 0.25, 1.0);
  CHECK(p.s == Approx(2.25));
  CHECK(p.spectral_parameter() == Approx(4.0 - 0.0625));
}
