#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace hkcce {

/// Truncated univariate Taylor expansion f(x0 + h) = sum_i c[i] h^i, i <= N.
/// Arithmetic propagates exact derivatives through the chain rule, which is
/// how radial profiles get their higher derivatives without differencing.
template <std::size_t N>
class Taylor {
 public:
  std::array<double, N + 1> c{};

  Taylor() = default;
  explicit Taylor(double value) { c[0] = value; }

  /// Builds from derivatives f, f', f'', ... (missing entries are zero).
  static Taylor from_derivatives(std::initializer_list<double> d) {
    Taylor t;
    double fact = 1.0;
    std::size_t i = 0;
    for (double v : d) {
      if (i > N) break;
      if (i > 0) fact *= static_cast<double>(i);
      t.c[i] = v / fact;
      ++i;
    }
    return t;
  }

  double value() const { return c[0]; }

  /// i-th derivative at the expansion point.
  double d(std::size_t i) const {
    double fact = 1.0;
    for (std::size_t j = 2; j <= i; ++j) fact *= static_cast<double>(j);
    return c[i] * fact;
  }

  Taylor<(N > 0 ? N - 1 : 0)> derivative() const {
    Taylor<(N > 0 ? N - 1 : 0)> out;
    for (std::size_t i = 0; i + 1 <= N; ++i) out.c[i] = static_cast<double>(i + 1) * c[i + 1];
    return out;
  }

  template <std::size_t M>
  Taylor<M> truncate() const {
    static_assert(M <= N);
    Taylor<M> out;
    for (std::size_t i = 0; i <= M; ++i) out.c[i] = c[i];
    return out;
  }

  Taylor& operator+=(const Taylor& o) {
    for (std::size_t i = 0; i <= N; ++i) c[i] += o.c[i];
    return *this;
  }
  Taylor& operator-=(const Taylor& o) {
    for (std::size_t i = 0; i <= N; ++i) c[i] -= o.c[i];
    return *this;
  }
  Taylor& operator*=(double a) {
    for (auto& v : c) v *= a;
    return *this;
  }

  friend Taylor operator+(Taylor a, const Taylor& b) { return a += b; }
  friend Taylor operator-(Taylor a, const Taylor& b) { return a -= b; }
  friend Taylor operator-(Taylor a) { return a *= -1.0; }
  friend Taylor operator*(Taylor a, double s) { return a *= s; }
  friend Taylor operator*(double s, Taylor a) { return a *= s; }
  friend Taylor operator+(Taylor a, double s) {
    a.c[0] += s;
    return a;
  }
  friend Taylor operator+(double s, Taylor a) { return a + s; }
  friend Taylor operator-(Taylor a, double s) {
    a.c[0] -= s;
    return a;
  }
  friend Taylor operator-(double s, Taylor a) { return (-a) + s; }

  friend Taylor operator*(const Taylor& a, const Taylor& b) {
    Taylor out;
    for (std::size_t i = 0; i <= N; ++i)
      for (std::size_t j = 0; i + j <= N; ++j) out.c[i + j] += a.c[i] * b.c[j];
    return out;
  }

  friend Taylor operator/(const Taylor& a, const Taylor& b) {
    Taylor out;
    for (std::size_t i = 0; i <= N; ++i) {
      double acc = a.c[i];
      for (std::size_t j = 1; j <= i; ++j) acc -= b.c[j] * out.c[i - j];
      out.c[i] = acc / b.c[0];
    }
    return out;
  }
  friend Taylor operator/(double s, const Taylor& b) { return Taylor(s) / b; }
  friend Taylor operator/(Taylor a, double s) { return a *= 1.0 / s; }
};

template <std::size_t N>
Taylor<N> exp(const Taylor<N>& a) {
  Taylor<N> out;
  out.c[0] = std::exp(a.c[0]);
  for (std::size_t i = 1; i <= N; ++i) {
    double acc = 0.0;
    for (std::size_t j = 1; j <= i; ++j) acc += static_cast<double>(j) * a.c[j] * out.c[i - j];
    out.c[i] = acc / static_cast<double>(i);
  }
  return out;
}

/// log of a Taylor series whose value is supplied separately, so callers can
/// pass an accurately computed log (e.g. via log1p) for the constant term.
template <std::size_t N>
Taylor<N> log_with_value(const Taylor<N>& a, double log_value) {
  Taylor<N> out;
  out.c[0] = log_value;
  for (std::size_t i = 1; i <= N; ++i) {
    double acc = a.c[i];
    for (std::size_t j = 1; j < i; ++j) acc -= static_cast<double>(j) * out.c[j] * a.c[i - j] / static_cast<double>(i);
    out.c[i] = acc / a.c[0];
  }
  return out;
}

template <std::size_t N>
Taylor<N> log(const Taylor<N>& a) {
  return log_with_value(a, std::log(a.c[0]));
}

/// a^p for a > 0.
template <std::size_t N>
Taylor<N> pow(const Taylor<N>& a, double p) {
  return exp(log(a) * p);
}

template <std::size_t N>
Taylor<N> square(const Taylor<N>& a) {
  return a * a;
}

}  // namespace hkcce
