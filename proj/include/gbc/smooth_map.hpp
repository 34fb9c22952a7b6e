#pragma once

#include <functional>
#include <vector>

#include "gbc/chart.hpp"

namespace gbc {

/// Dense Jacobian, row i = d(target_i), column a = d/d(source_a).
using Jacobian = std::vector<std::vector<double>>;

/// A smooth map between chart domains with an evaluable Jacobian.  Maps built
/// from expressions carry exact symbolic Jacobians; function-backed maps fall
/// back to 4th-order central differences.
class SmoothMap {
public:
  SmoothMap() = default;

  static SmoothMap from_exprs(AtlasPtr src, int src_chart, AtlasPtr dst, int dst_chart,
                              std::vector<Expr> components, int src_dim = -1);
  static SmoothMap from_function(AtlasPtr src, int src_chart, AtlasPtr dst, int dst_chart,
                                 int src_dim, int dst_dim,
                                 std::function<Point(const Point&)> fn);

  Point operator()(const Point& x) const;
  Jacobian jacobian(const Point& x, double h = 1e-4) const;

  int source_dim() const { return src_dim_; }
  int target_dim() const { return dst_dim_; }
  const AtlasPtr& source_atlas() const { return src_; }
  const AtlasPtr& target_atlas() const { return dst_; }
  int source_chart() const { return src_chart_; }
  int target_chart() const { return dst_chart_; }
  bool has_analytic_jacobian() const { return !jac_exprs_.empty(); }

  static SmoothMap compose(const SmoothMap& outer, const SmoothMap& inner);

private:
  AtlasPtr src_, dst_;
  int src_chart_ = -1, dst_chart_ = -1;
  int src_dim_ = 0, dst_dim_ = 0;
  std::vector<Expr> exprs_;
  std::vector<std::vector<Expr>> jac_exprs_;
  std::function<Point(const Point&)> fn_;
};

} // namespace gbc
