#pragma once

#include <vector>

namespace gbc {

/// Gauss-Legendre rule on [0,1]; nodes/weights cached per order.
struct QuadRule {
  std::vector<double> node;
  std::vector<double> weight;
};

const QuadRule& gauss_legendre(int order);

} // namespace gbc
