#include "gbc/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "gbc/error.hpp"

namespace gbc {

namespace {

// Nodes via Newton iteration on P_n, standard three-term recurrence.
QuadRule compute_rule(int n) {
  QuadRule rule;
  rule.node.resize(n);
  rule.weight.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5)); // Chebyshev start
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    // map [-1,1] -> [0,1]; descending x gives ascending node order
    rule.node[n - 1 - i] = 0.5 * (x + 1.0);
    rule.weight[n - 1 - i] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

} // namespace

const QuadRule& gauss_legendre(int order) {
  require(order >= 1 && order <= 128, "quadrature order out of range");
  static std::map<int, QuadRule> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, compute_rule(order)).first;
  return it->second;
}

} // namespace gbc
