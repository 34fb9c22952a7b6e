#pragma once

#include <memory>
#include <string>
#include <vector>

#include "gbc/error.hpp"
#include "gbc/expr.hpp"

namespace gbc {

using Point = std::vector<double>;

/// A coordinate box in R^n.  Coordinates are named so fixture expressions can
/// refer to them.  An optional embedding into R^m supplies the geometric
/// distance used by singular-set clearance checks; periodic axes record the
/// identification length (purely informational for seam-aware fixtures).
struct Chart {
  std::string name;
  std::vector<std::string> coords;
  std::vector<double> lo, hi;
  int orientation = +1;
  std::vector<double> period;   // 0 = aperiodic
  std::vector<Expr> embedding;  // optional map into R^m

  int dim() const { return (int)coords.size(); }

  bool contains(const Point& x, double margin = 0.0) const {
    if ((int)x.size() != dim()) return false;
    for (int i = 0; i < dim(); ++i)
      if (x[i] < lo[i] + margin || x[i] > hi[i] - margin) return false;
    return true;
  }

  /// Embedding-space image (identity when no embedding was declared).
  Point embed(const Point& x) const {
    if (embedding.empty()) return x;
    Point y(embedding.size());
    for (size_t i = 0; i < embedding.size(); ++i) y[i] = embedding[i].eval(x);
    return y;
  }
};

struct AtlasTransition {
  int from_chart = -1, to_chart = -1;
  std::vector<Expr> map;      // to-coords as expressions in from-coords
  std::vector<double> sample_lo, sample_hi; // overlap sampling box (from-coords)
};

struct Atlas {
  std::string name;
  std::vector<Chart> charts;
  std::vector<AtlasTransition> transitions;

  int dim() const { return charts.empty() ? 0 : charts[0].dim(); }
  int chart_index(const std::string& chart_name) const {
    for (size_t i = 0; i < charts.size(); ++i)
      if (charts[i].name == chart_name) return (int)i;
    fail("unknown chart '" + chart_name + "' in atlas " + name);
  }
};

using AtlasPtr = std::shared_ptr<const Atlas>;

} // namespace gbc
