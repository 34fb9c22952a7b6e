#include "gbc/smooth_map.hpp"

namespace gbc {

SmoothMap SmoothMap::from_exprs(AtlasPtr src, int src_chart, AtlasPtr dst, int dst_chart,
                                std::vector<Expr> components, int src_dim) {
  SmoothMap m;
  m.src_ = std::move(src);
  m.dst_ = std::move(dst);
  m.src_chart_ = src_chart;
  m.dst_chart_ = dst_chart;
  m.src_dim_ = src_dim >= 0 ? src_dim : (m.src_ ? m.src_->charts[src_chart].dim() : 0);
  m.dst_dim_ = (int)components.size();
  m.exprs_ = std::move(components);
  m.jac_exprs_.resize(m.dst_dim_);
  for (int i = 0; i < m.dst_dim_; ++i) {
    m.jac_exprs_[i].resize(m.src_dim_);
    for (int a = 0; a < m.src_dim_; ++a)
      m.jac_exprs_[i][a] = m.exprs_[i].derivative(a);
  }
  return m;
}

SmoothMap SmoothMap::from_function(AtlasPtr src, int src_chart, AtlasPtr dst, int dst_chart,
                                   int src_dim, int dst_dim,
                                   std::function<Point(const Point&)> fn) {
  SmoothMap m;
  m.src_ = std::move(src);
  m.dst_ = std::move(dst);
  m.src_chart_ = src_chart;
  m.dst_chart_ = dst_chart;
  m.src_dim_ = src_dim;
  m.dst_dim_ = dst_dim;
  m.fn_ = std::move(fn);
  return m;
}

Point SmoothMap::operator()(const Point& x) const {
  if (fn_) return fn_(x);
  Point y(dst_dim_);
  for (int i = 0; i < dst_dim_; ++i) y[i] = exprs_[i].eval(x);
  return y;
}

Jacobian SmoothMap::jacobian(const Point& x, double h) const {
  Jacobian J(dst_dim_, std::vector<double>(src_dim_, 0.0));
  if (!jac_exprs_.empty()) {
    for (int i = 0; i < dst_dim_; ++i)
      for (int a = 0; a < src_dim_; ++a)
        J[i][a] = jac_exprs_[i][a].eval(x);
    return J;
  }
  // 4th-order central differences
  for (int a = 0; a < src_dim_; ++a) {
    Point xp = x, xpp = x, xm = x, xmm = x;
    xp[a] += h;
    xpp[a] += 2 * h;
    xm[a] -= h;
    xmm[a] -= 2 * h;
    Point fp = (*this)(xp), fpp = (*this)(xpp), fm = (*this)(xm), fmm = (*this)(xmm);
    for (int i = 0; i < dst_dim_; ++i)
      J[i][a] = (-fpp[i] + 8 * fp[i] - 8 * fm[i] + fmm[i]) / (12 * h);
  }
  return J;
}

SmoothMap SmoothMap::compose(const SmoothMap& outer, const SmoothMap& inner) {
  require(inner.target_dim() == outer.source_dim(), "composition dimension mismatch");
  SmoothMap m;
  m.src_ = inner.src_;
  m.dst_ = outer.dst_;
  m.src_chart_ = inner.src_chart_;
  m.dst_chart_ = outer.dst_chart_;
  m.src_dim_ = inner.src_dim_;
  m.dst_dim_ = outer.dst_dim_;
  m.fn_ = [outer, inner](const Point& x) { return outer(inner(x)); };
  return m;
}

} // namespace gbc
