#include "hkcce/ode.hpp"

#include <algorithm>
#include <cmath>

namespace hkcce {

namespace {

// Dormand-Prince tableau.
constexpr Real c2 = 1.0L / 5, c3 = 3.0L / 10, c4 = 4.0L / 5, c5 = 8.0L / 9;
constexpr Real a21 = 1.0L / 5;
constexpr Real a31 = 3.0L / 40, a32 = 9.0L / 40;
constexpr Real a41 = 44.0L / 45, a42 = -56.0L / 15, a43 = 32.0L / 9;
constexpr Real a51 = 19372.0L / 6561, a52 = -25360.0L / 2187, a53 = 64448.0L / 6561, a54 = -212.0L / 729;
constexpr Real a61 = 9017.0L / 3168, a62 = -355.0L / 33, a63 = 46732.0L / 5247, a64 = 49.0L / 176,
               a65 = -5103.0L / 18656;
constexpr Real b1 = 35.0L / 384, b3 = 500.0L / 1113, b4 = 125.0L / 192, b5 = -2187.0L / 6784, b6 = 11.0L / 84;
// b - b* (fifth minus fourth order weights).
constexpr Real e1 = 71.0L / 57600, e3 = -71.0L / 16695, e4 = 71.0L / 1920, e5 = -17253.0L / 339200,
               e6 = 22.0L / 525, e7 = -1.0L / 40;

State2 axpy(const State2& y, Real h, std::initializer_list<std::pair<Real, const State2*>> terms) {
  State2 out = y;
  for (const auto& [c, k] : terms) {
    out[0] += h * c * (*k)[0];
    out[1] += h * c * (*k)[1];
  }
  return out;
}

}  // namespace

std::vector<State2> integrate_dp45(const Rhs2& rhs, Real t0, State2 y, std::span<const Real> outputs,
                                   const OdeOptions& opts, OdeStats* stats) {
  std::vector<State2> out;
  out.reserve(outputs.size());
  Real t = t0;
  Real h = opts.h_init;
  long steps = 0;
  OdeStats local;
  State2 k1 = rhs(t, y);
  for (Real target : outputs) {
    if (target < t) throw IntegrationError("integrate_dp45: output times must be ascending", t, h, steps);
    while (t < target) {
      if (++steps > opts.max_steps) throw IntegrationError("integrate_dp45: step budget exhausted", t, h, steps);
      bool clipped = false;
      Real step = h;
      if (t + step >= target) {
        step = target - t;
        clipped = true;
      }
      const State2 k2 = rhs(t + c2 * step, axpy(y, step, {{a21, &k1}}));
      const State2 k3 = rhs(t + c3 * step, axpy(y, step, {{a31, &k1}, {a32, &k2}}));
      const State2 k4 = rhs(t + c4 * step, axpy(y, step, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
      const State2 k5 = rhs(t + c5 * step, axpy(y, step, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
      const State2 k6 = rhs(t + step, axpy(y, step, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
      const State2 y5 = axpy(y, step, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
      const State2 k7 = rhs(t + step, y5);
      const State2 err = axpy(State2{0, 0}, step, {{e1, &k1}, {e3, &k3}, {e4, &k4}, {e5, &k5}, {e6, &k6}, {e7, &k7}});
      const Real scale = opts.rtol * std::max(std::abs(y[0]) + std::abs(y[1]), std::abs(y5[0]) + std::abs(y5[1]));
      const Real ratio = std::max(std::abs(err[0]), std::abs(err[1])) / scale;
      if (!std::isfinite(static_cast<double>(ratio)))
        throw IntegrationError("integrate_dp45: non-finite error estimate", t, step, steps);
      if (ratio <= 1.0L) {
        t = clipped ? target : t + step;
        y = y5;
        k1 = k7;
        ++local.accepted;
        const Real grow = ratio == 0 ? 5.0L : std::min(5.0L, 0.9L * std::pow(ratio, -0.2L));
        // A clipped step says nothing about the natural step length.
        if (!clipped) h = step * grow;
        else if (ratio > 0) h = std::max(h, step * grow);
      } else {
        ++local.rejected;
        h = step * std::max(0.1L, 0.9L * std::pow(ratio, -0.2L));
        if (h < opts.h_min) throw IntegrationError("integrate_dp45: step size collapsed", t, h, steps);
      }
    }
    out.push_back(y);
  }
  if (stats) *stats = local;
  return out;
}

}  // namespace hkcce
