#include "hkcce/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hkcce {

GaussLegendreRule gauss_legendre(int order) {
  if (order < 1) throw std::invalid_argument("gauss_legendre: order must be positive");
  GaussLegendreRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  const int half = (order + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Tricomi initial guess, then Newton on P_n.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (int j = 2; j <= order; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      if (order == 1) p0 = 1.0;
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged root.
    double p0 = 1.0;
    double p1 = x;
    for (int j = 2; j <= order; ++j) {
      const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
      p0 = p1;
      p1 = p2;
    }
    dp = order == 1 ? 1.0 : order * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.weights[i] = w;
    rule.nodes[order - 1 - i] = x;
    rule.weights[order - 1 - i] = w;
  }
  if (order % 2 == 1) rule.nodes[order / 2] = 0.0;
  return rule;
}

std::vector<QuadNode> composite_nodes(std::span<const double> breaks, int order) {
  const GaussLegendreRule rule = gauss_legendre(order);
  std::vector<QuadNode> out;
  if (breaks.size() < 2) return out;
  out.reserve((breaks.size() - 1) * rule.nodes.size());
  for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
    const double a = breaks[p];
    const double b = breaks[p + 1];
    if (!(b > a)) throw std::invalid_argument("composite_nodes: breaks must be strictly increasing");
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) out.push_back({mid + half * rule.nodes[i], half * rule.weights[i]});
  }
  return out;
}

double integrate(std::span<const QuadNode> nodes, const std::function<double(double)>& f) {
  double sum = 0.0;
  for (const auto& q : nodes) sum += q.w * f(q.x);
  return sum;
}

}  // namespace hkcce
