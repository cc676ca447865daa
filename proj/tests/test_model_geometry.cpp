#include <doctest.h>

#include <cmath>

#include "hkcce/model_geometry.hpp"

using namespace hkcce;
using doctest::Approx;

TEST_CASE("model space coordinates") {
  const ModelSpace m(4, 4.0);
  CHECK(m.r_center() == Approx(1.0));
  CHECK(m.t0() == Approx(std::log(2.0)));
  CHECK(m.warp(m.t0()) == Approx(0.0).epsilon(1e-15));
  for (double tau : {0.1, 1.0, 7.0}) {
    const double r = m.r_from_tau(tau);
    CHECK(m.tau_from_r(r) == Approx(tau).epsilon(1e-14));
    // f = sqrt(k) sinh(tau), f' = sqrt(k) cosh(tau).
    CHECK(m.warp(m.t_from_tau(tau)) == Approx(2.0 * std::sinh(tau)).epsilon(1e-14));
    CHECK(m.warp_prime(m.t_from_tau(tau)) == Approx(2.0 * std::cosh(tau)).epsilon(1e-14));
    CHECK(m.log_warp(m.t_from_tau(tau)) == Approx(std::log(2.0 * std::sinh(tau))).epsilon(1e-14));
  }
}

TEST_CASE("normal form: r f -> phi") {
  const ModelSpace m(5, 2.0);
  for (double r : {0.01, 0.3, 1.0}) {
    const double t = m.t_from_r(r);
    CHECK(r * m.warp(t) == Approx(m.phi(r)).epsilon(1e-14));
  }
}

TEST_CASE("models are Einstein") {
  for (double k : {0.5, 1.0, 2.0, 4.0}) {
    const ModelSpace m(6, k);
    const EinsteinResiduals e = model_validate(m, 200);
    CHECK(e.samples == 200);
    CHECK(e.max_radial < 1e-12);
    CHECK(e.max_spherical < 1e-12);
  }
}

TEST_CASE("mean curvature of level sets") {
  const ModelSpace m(4, 1.0);
  const double r = 0.3;
  const double t = m.t_from_r(r);
  CHECK(mean_curvature_exact(m, r) == Approx(4.0 * m.warp_prime(t) / m.warp(t)).epsilon(1e-14));
  CHECK(mean_curvature_exact(m, 1e-6) == Approx(4.0).epsilon(1e-10));
}

TEST_CASE("invalid models") {
  CHECK_THROWS(ModelSpace(4, 0.0));
  CHECK_THROWS(ModelSpace(4, -1.0));
}
