#include <doctest.h>

#include <cmath>
#include <vector>

#include "hkcce/ode.hpp"
#include "hkcce/quadrature.hpp"
#include "hkcce/taylor.hpp"

using namespace hkcce;
using doctest::Approx;

TEST_CASE("Gauss-Legendre rule integrates polynomials of degree 2n-1 exactly") {
  for (int order : {2, 5, 8, 16, 32}) {
    const auto rule = gauss_legendre(order);
    double wsum = 0.0;
    for (double w : rule.weights) wsum += w;
    CHECK(wsum == Approx(2.0).epsilon(1e-14));
    const int deg = 2 * order - 2;  // even degree below the exactness limit
    double s = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * std::pow(rule.nodes[i], deg);
    CHECK(s == Approx(2.0 / (deg + 1)).epsilon(1e-13));
  }
}

TEST_CASE("composite rule on an exponential") {
  const std::vector<double> breaks{0.0, 0.5, 1.0, 2.0};
  const auto nodes = composite_nodes(breaks, 16);
  CHECK(nodes.size() == 48);
  const double v = integrate(nodes, [](double x) { return std::exp(-x); });
  CHECK(v == Approx(1.0 - std::exp(-2.0)).epsilon(1e-15));
  const std::vector<double> bad{0.0, 1.0, 1.0};
  CHECK_THROWS(composite_nodes(bad, 4));
}

TEST_CASE("DP45 hits every output exactly and meets the tolerance") {
  // y'' = -y with y(0) = 0, y'(0) = 1.
  const Rhs2 rhs = [](Real, const State2& y) { return State2{y[1], -y[0]}; };
  const std::vector<Real> out{0.5L, 1.0L, 3.0L, 10.0L};
  OdeOptions opts;
  opts.rtol = 1e-12L;
  OdeStats stats;
  const auto ys = integrate_dp45(rhs, 0.0L, State2{0.0L, 1.0L}, out, opts, &stats);
  REQUIRE(ys.size() == out.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    CHECK(static_cast<double>(ys[i][0]) == Approx(std::sin(static_cast<double>(out[i]))).epsilon(1e-10));
    CHECK(static_cast<double>(ys[i][1]) == Approx(std::cos(static_cast<double>(out[i]))).epsilon(1e-10));
  }
  CHECK(stats.accepted > 0);
}

TEST_CASE("DP45 rejects descending outputs") {
  const Rhs2 rhs = [](Real, const State2& y) { return State2{y[1], -y[0]}; };
  const std::vector<Real> out{1.0L, 0.5L};
  CHECK_THROWS(integrate_dp45(rhs, 0.0L, State2{0.0L, 1.0L}, out, OdeOptions{}));
}

TEST_CASE("Taylor arithmetic propagates derivatives") {
  // f(x) = exp(2 x) at x = 0.3: derivatives 2^i e^{0.6}.
  Taylor<3> x;
  x.c = {0.3, 1.0, 0.0, 0.0};
  const Taylor<3> f = exp(x * 2.0);
  for (std::size_t i = 0; i <= 3; ++i) CHECK(f.d(i) == Approx(std::pow(2.0, double(i)) * std::exp(0.6)).epsilon(1e-14));
  const Taylor<3> g = log(f);
  CHECK(g.c[0] == Approx(0.6).epsilon(1e-14));
  CHECK(g.c[1] == Approx(2.0).epsilon(1e-14));
  CHECK(std::abs(g.c[2]) < 1e-14);
}
