#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "gbc/chart.hpp"
#include "gbc/form_field.hpp"
#include "gbc/smooth_map.hpp"

namespace gbc {

constexpr int kDefaultQuadOrder = 16;

/// A q-cell: a smooth map from the standard cube [0,1]^q into a chart.
/// Degenerate faces are allowed.  Cells remember where they came from
/// (parent id + fixed cube axes) so that matching faces of faces cancel
/// formally in the boundary operator.
class ParamSimplex {
public:
  ParamSimplex() = default;

  static ParamSimplex from_exprs(AtlasPtr atlas, int chart, int q,
                                 std::vector<Expr> components);
  static ParamSimplex from_function(AtlasPtr atlas, int chart, int q, int target_dim,
                                    std::function<Point(const Point&)> map);

  int dim() const { return q_; }
  int chart() const { return chart_; }
  const AtlasPtr& atlas() const { return atlas_; }

  Point operator()(const Point& u) const { return map_(u); }
  Jacobian jacobian(const Point& u, double h = 1e-4) const { return map_.jacobian(u, h); }
  const SmoothMap& map() const { return map_; }

  /// Face with cube axis `axis` frozen at side 0/1 (a (q-1)-cell).
  ParamSimplex face(int axis, int side) const;

  /// Provenance key for formal cancellation: (root id, sorted frozen axes).
  struct Key {
    uint64_t root;
    std::vector<std::pair<int, int>> frozen; // (original axis, side)
    bool operator==(const Key& o) const { return root == o.root && frozen == o.frozen; }
    bool operator<(const Key& o) const {
      return root != o.root ? root < o.root : frozen < o.frozen;
    }
  };
  const Key& key() const { return key_; }

  /// Compose with a projection/inclusion map (pushforward of the cell).
  ParamSimplex composed_with(const SmoothMap& outer) const;

private:
  AtlasPtr atlas_;
  int chart_ = -1;
  int q_ = 0;
  SmoothMap map_;
  Key key_;
  static uint64_t next_id();
};

/// Formal integer combination of cells of one dimension.
class Chain {
public:
  Chain() = default;
  explicit Chain(int dim) : dim_(dim) {}

  int dim() const { return dim_; }
  bool empty() const { return cells_.empty(); }
  size_t size() const { return cells_.size(); }

  void add(ParamSimplex cell, int coeff = 1);
  Chain& operator+=(const Chain& o);
  Chain operator-() const;
  friend Chain operator+(Chain a, const Chain& b) { return a += b; }
  friend Chain operator-(Chain a, const Chain& b) { return a += -b; }

  const std::vector<std::pair<ParamSimplex, int>>& cells() const { return cells_; }

  /// Alternating sum of cube faces; matching repeated faces cancel.
  Chain boundary() const;

  /// Pushforward: compose every cell with the given map.
  Chain mapped(const SmoothMap& outer) const;

private:
  int dim_ = 0;
  std::vector<std::pair<ParamSimplex, int>> cells_;
};

/// Integral of a degree-q form field over a q-chain by tensor-product
/// Gauss-Legendre quadrature of the pulled-back top form.
double integrate(const FormField& f, const Chain& c, int order = kDefaultQuadOrder);

/// Integral over a single cell.
double integrate_cell(const FormField& f, const ParamSimplex& cell, int order);

} // namespace gbc
