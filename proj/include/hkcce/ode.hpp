#pragma once

#include <array>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hkcce {

using Real = long double;
using State2 = std::array<Real, 2>;
using Rhs2 = std::function<State2(Real, const State2&)>;

class IntegrationError : public std::runtime_error {
 public:
  IntegrationError(const std::string& what, Real t, Real h, long steps)
      : std::runtime_error(what), t_(t), h_(h), steps_(steps) {}
  Real t() const { return t_; }
  Real step() const { return h_; }
  long steps() const { return steps_; }

 private:
  Real t_;
  Real h_;
  long steps_;
};

struct OdeOptions {
  Real rtol = 1e-12L;
  Real h_init = 1e-4L;
  Real h_min = 1e-14L;
  long max_steps = 2'000'000;
};

struct OdeStats {
  long accepted = 0;
  long rejected = 0;
};

/// Embedded Dormand-Prince 5(4) integration of a two-component system,
/// stepping exactly onto every requested output time (ascending, all > t0).
/// The error norm is relative to |y0| + |y1| so a component may pass
/// through zero without stalling the controller.
std::vector<State2> integrate_dp45(const Rhs2& rhs, Real t0, State2 y0, std::span<const Real> outputs,
                                   const OdeOptions& opts, OdeStats* stats = nullptr);

}  // namespace hkcce
