#pragma once

#include <functional>
#include <span>
#include <vector>

namespace hkcce {

/// Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussLegendreRule gauss_legendre(int order);

struct QuadNode {
  double x;
  double w;
};

/// Composite Gauss-Legendre nodes on consecutive panels [breaks[i], breaks[i+1]].
std::vector<QuadNode> composite_nodes(std::span<const double> breaks, int order);

double integrate(std::span<const QuadNode> nodes, const std::function<double(double)>& f);

}  // namespace hkcce
