#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "hkcce/compactification.hpp"

using namespace hkcce;
using doctest::Approx;

TEST_CASE("boundary exponents") {
  const auto half = boundary_exponents(0.5, 5);
  REQUIRE(half.size() == 5);
  for (int i = 0; i < 5; ++i) CHECK(half[i] == Approx(i + 1.0));
  const auto quarter = boundary_exponents(0.25, 4);
  CHECK(quarter[0] == Approx(0.5));
  CHECK(quarter[1] == Approx(1.0));
  CHECK(quarter[2] == Approx(1.5));
}

TEST_CASE("generalized Richardson extrapolation is exact on its model") {
  const std::vector<double> ex{0.5, 1.0, 2.0};
  std::vector<double> h, v;
  for (int i = 0; i < 4; ++i) {
    const double x = 0.1 / std::ldexp(1.0, i);
    h.push_back(x);
    v.push_back(3.0 + 2.0 * std::sqrt(x) - x + 5.0 * x * x);
  }
  CHECK(richardson_extrapolate(h, v, ex) == Approx(3.0).epsilon(1e-12));
}

TEST_CASE("trace-free norm") {
  CHECK(tracefree_norm_sq(4, 1.0, 1.0) == 0.0);
  CHECK(tracefree_norm_sq(4, 2.0, 1.0) == Approx(0.8));
}

TEST_CASE("Lee compactification is the hemisphere") {
  const ModelSpace m(4, 1.0);
  const CompactifiedGeometry g = build_lee(m);
  for (double tau : {0.2, 1.0, 5.0, 20.0}) {
    const PointData p = g.at(tau);
    CHECK(p.rho == Approx(1.0 / std::cosh(tau)).epsilon(1e-13));
    CHECK(p.W == Approx(2.5).epsilon(1e-12));  // (n+1)/2 for k = 1
    CHECK(std::abs(p.rho2_tracefree_sq) < 1e-24);
  }
  CHECK(g.boundary_W_extrapolated == Approx(g.boundary_W_expected).epsilon(1e-12));
  const ResidualSuite s = residual_suite(g);
  CHECK(s.rho.sup < 1e-12);
  CHECK(s.W.sup < 1e-12);
  CHECK(s.J_crosscheck.sup < 1e-12);
  CHECK(s.min_W > 0.0);
}

TEST_CASE("adapted compactification at gamma = 1/2 is the flat ball") {
  const ModelSpace m(4, 1.0);
  const auto taus = window_taus(m, 20);
  const CompactifiedGeometry g = build_adapted(m, 0.5, ScatteringOptions{}, taus);
  const ResidualSuite s = residual_suite(g);
  CHECK(s.rho.sup < 1e-9);
  CHECK(s.W.sup < 1e-9);
  CHECK(s.max_trace_mismatch < 1e-9);
  CHECK(s.boundary_rel_err < 1e-10);
  for (double tau : taus) {
    const PointData p = g.at(tau);
    CHECK(p.W == Approx(-4.0 * 0.5 / d_gamma(0.5) * g.q_value).epsilon(1e-8));
    CHECK(std::abs(p.rho2_tracefree_sq) < 1e-16);
  }
  CHECK(g.mean_curvature_extrapolated == Approx(4.0).epsilon(1e-8));
}

TEST_CASE("adapted residuals and positivity across gamma") {
  for (double gamma : {0.05, 0.25, 0.75, 0.95})
    for (double k : {0.5, 2.0}) {
      const ModelSpace m(5, k);
      const CompactifiedGeometry g = build_adapted(m, gamma, ScatteringOptions{});
      const ResidualSuite s = residual_suite(g);
      CHECK(s.rho.sup < 1e-9);
      CHECK(s.W.sup < 1e-9);
      CHECK(s.J_crosscheck.sup < 1e-9);
      CHECK(s.min_W > 0.0);
      CHECK(s.boundary_rel_err < 1e-9);
    }
}

TEST_CASE("ODE and series routes agree where they meet") {
  const ModelSpace m(6, 1.0);
  const std::vector<double> extra{2.5};
  const CompactifiedGeometry g = build_adapted(m, 0.25, ScatteringOptions{}, extra);
  const RadialJet a = g.jet(2.5);
  const RadialJet b = g.series_jet(2.5);
  CHECK_FALSE(a.from_series);
  CHECK(b.from_series);
  CHECK(a.log_rho == Approx(b.log_rho).epsilon(1e-9));
  CHECK(a.eps.c[0] == Approx(b.eps.c[0]).epsilon(1e-7));
  CHECK_THROWS_AS(g.jet(1.2345), DomainError);
}

TEST_CASE("Hessian split") {
  const ModelSpace m(4, 2.0);
  const auto taus = window_taus(m, 50);
  const CompactifiedGeometry g = build_adapted(m, 0.75, ScatteringOptions{}, taus);
  const HessianSplit h = hessian_split(g, taus);
  CHECK(h.tau.size() == 50);
  CHECK(h.max_trace_mismatch < 1e-10);
  for (std::size_t i = 0; i < h.tau.size(); ++i) CHECK(h.tracefree_sq[i] >= 0.0);
}

TEST_CASE("profile CSV") {
  const ModelSpace m(4, 1.0);
  const CompactifiedGeometry g = build_lee(m);
  const std::vector<double> taus{0.5, 1.0};
  const std::string csv = profile_csv(g, taus);
  CHECK(csv.rfind("t,r,rho,drho,grad_sq,T_or_J,res_rho,res_T_or_J\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
}
