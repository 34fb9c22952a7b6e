#include "gbc/chain.hpp"

#include <atomic>
#include <bit>
#include <map>

#include "gbc/quadrature.hpp"

namespace gbc {

uint64_t ParamSimplex::next_id() {
  static std::atomic<uint64_t> counter{1};
  return counter.fetch_add(1);
}

ParamSimplex ParamSimplex::from_exprs(AtlasPtr atlas, int chart, int q,
                                      std::vector<Expr> components) {
  ParamSimplex c;
  c.atlas_ = atlas;
  c.chart_ = chart;
  c.q_ = q;
  c.map_ = SmoothMap::from_exprs(nullptr, -1, atlas, chart, std::move(components), q);
  c.key_.root = next_id();
  return c;
}

ParamSimplex ParamSimplex::from_function(AtlasPtr atlas, int chart, int q, int target_dim,
                                         std::function<Point(const Point&)> map) {
  ParamSimplex c;
  c.atlas_ = atlas;
  c.chart_ = chart;
  c.q_ = q;
  c.map_ = SmoothMap::from_function(nullptr, -1, atlas, chart, q, target_dim,
                                    std::move(map));
  c.key_.root = next_id();
  return c;
}

ParamSimplex ParamSimplex::face(int axis, int side) const {
  require(q_ >= 1, "0-cells have no faces");
  require(axis >= 0 && axis < q_ && (side == 0 || side == 1), "bad face index");
  ParamSimplex f;
  f.atlas_ = atlas_;
  f.chart_ = chart_;
  f.q_ = q_ - 1;
  SmoothMap inner = map_;
  int q = q_;
  f.map_ = SmoothMap::from_function(
      nullptr, -1, atlas_, chart_, q_ - 1, map_.target_dim(),
      [inner, axis, side, q](const Point& u) {
        Point v(q);
        int j = 0;
        for (int i = 0; i < q; ++i)
          v[i] = (i == axis) ? (double)side : u[j++];
        return inner(v);
      });
  // translate face axis to the original axis numbering of the root cell
  f.key_ = key_;
  int orig = axis;
  std::vector<int> freed;
  {
    // reconstruct original axis: axis counts only non-frozen slots
    std::vector<bool> frozen_axes;
    int max_axis = q_ + (int)key_.frozen.size();
    frozen_axes.assign(max_axis, false);
    for (auto& [a, s] : key_.frozen) frozen_axes[a] = true;
    int count = -1;
    for (int a = 0; a < max_axis; ++a) {
      if (frozen_axes[a]) continue;
      if (++count == axis) {
        orig = a;
        break;
      }
    }
  }
  f.key_.frozen.push_back({orig, side});
  std::sort(f.key_.frozen.begin(), f.key_.frozen.end());
  return f;
}

ParamSimplex ParamSimplex::composed_with(const SmoothMap& outer) const {
  ParamSimplex c;
  c.atlas_ = outer.target_atlas();
  c.chart_ = outer.target_chart();
  c.q_ = q_;
  c.map_ = SmoothMap::compose(outer, map_);
  c.key_.root = next_id();
  return c;
}

void Chain::add(ParamSimplex cell, int coeff) {
  if (coeff == 0) return;
  if (cells_.empty() && dim_ == 0) dim_ = cell.dim();
  require(cell.dim() == dim_, "cell dimension differs from chain dimension");
  cells_.push_back({std::move(cell), coeff});
}

Chain& Chain::operator+=(const Chain& o) {
  if (cells_.empty() && o.cells_.empty()) return *this;
  if (cells_.empty()) dim_ = o.dim_;
  for (auto& [cell, k] : o.cells_) add(cell, k);
  return *this;
}

Chain Chain::operator-() const {
  Chain n(dim_);
  for (auto& [cell, k] : cells_) n.add(cell, -k);
  return n;
}

Chain Chain::boundary() const {
  require(dim_ >= 1, "boundary of a 0-chain");
  // standard cubical signs: for each axis i (0-based), faces enter as
  // (-1)^{i+1} (F_i^0 - F_i^1); cube Stokes then matches integrate().
  std::map<ParamSimplex::Key, std::pair<ParamSimplex, int>> acc;
  for (auto& [cell, k] : cells_) {
    for (int i = 0; i < dim_; ++i) {
      int sign = (i % 2 == 0) ? -1 : 1;
      for (int side = 0; side < 2; ++side) {
        ParamSimplex f = cell.face(i, side);
        int coeff = k * sign * (side == 0 ? 1 : -1);
        ParamSimplex::Key key = f.key();
        auto it = acc.find(key);
        if (it == acc.end())
          acc.emplace(std::move(key), std::make_pair(std::move(f), coeff));
        else
          it->second.second += coeff;
      }
    }
  }
  Chain b(dim_ - 1);
  for (auto& [key, cc] : acc)
    if (cc.second != 0) b.add(cc.first, cc.second);
  return b;
}

Chain Chain::mapped(const SmoothMap& outer) const {
  Chain out(dim_);
  for (auto& [cell, k] : cells_) out.add(cell.composed_with(outer), k);
  return out;
}

double integrate_cell(const FormField& f, const ParamSimplex& cell, int order) {
  const int q = cell.dim();
  require(f.fiber_rank() == 0, "only ordinary forms are integrated over chains");
  if (q == 0) {
    Point u;
    Point x = cell(u);
    return f(cell.chart(), x).coeff(0, 0);
  }
  const QuadRule& rule = gauss_legendre(order);
  const int n = order;
  std::vector<int> idx(q, 0);
  double total = 0.0;
  const uint32_t full = (q >= 32) ? ~0u : ((1u << q) - 1);
  (void)full;
  for (;;) {
    Point u(q);
    double w = 1.0;
    for (int i = 0; i < q; ++i) {
      u[i] = rule.node[idx[i]];
      w *= rule.weight[idx[i]];
    }
    Point x = cell(u);
    GradedElement v = f(cell.chart(), x);
    Jacobian J = cell.jacobian(u);
    // pull the q-form back to the cube and take the du_1...du_q coefficient
    GradedElement pb = pullback_value(v, J, q);
    total += w * pb.coeff((1u << q) - 1, 0);
    int i = 0;
    while (i < q && ++idx[i] == n) idx[i++] = 0;
    if (i == q) break;
  }
  return total;
}

double integrate(const FormField& f, const Chain& c, int order) {
  require(f.degree() == c.dim(),
          "form degree does not match chain dimension");
  double total = 0.0;
  for (auto& [cell, k] : c.cells()) {
    require(cell.atlas() == f.domain(), "chain cell lives outside the field's domain");
    total += k * integrate_cell(f, cell, order);
  }
  return total;
}

} // namespace gbc
