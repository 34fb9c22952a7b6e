#pragma once

#include <functional>
#include <optional>

#include "gbc/berezin.hpp"
#include "gbc/chart.hpp"
#include "gbc/form_field.hpp"
#include "gbc/smooth_map.hpp"

namespace gbc {

/// Connection data at a point: value[a][i][j] is the dx_a-coefficient of
/// omega_{ij}, deriv[b][a][i][j] its partial along axis b.
struct ConnJet {
  std::vector<std::vector<std::vector<double>>> value;
  std::vector<std::vector<std::vector<std::vector<double>>>> deriv;
};

/// Section data at a point: value[i] and deriv[a][i].
struct SecJet {
  std::vector<double> value;
  std::vector<std::vector<double>> deriv;
};

/// Frame transition g in SO(r) attached to an atlas transition, entries as
/// expressions in the from-chart coordinates: components transform by
/// v' = g v and connections by w' = g w g^-1 - (dg) g^-1.
struct FrameTransition {
  std::vector<std::vector<Expr>> g; // r x r, row major
};

struct DerivedSpaces; // lazily built total space / sphere bundle, shared by copies

/// Oriented Euclidean vector bundle in orthonormal local frames: the metric
/// is the identity and metric compatibility is exactly antisymmetry of the
/// per-chart connection matrices.
class BundleWithConnection {
public:
  BundleWithConnection() = default;

  /// conn[chart][i][j][a] = dx_a-coefficient expression of omega_{ij}.
  static BundleWithConnection from_exprs(
      AtlasPtr base, int rank,
      std::vector<std::vector<std::vector<std::vector<Expr>>>> conn,
      std::vector<FrameTransition> frames = {});

  AtlasPtr base() const { return base_; }
  int rank() const { return rank_; }
  ConnJet connection_jet(int chart, const Point& p) const { return jet_(chart, p); }
  const std::vector<FrameTransition>& frame_transitions() const { return frames_; }

  /// R = d(omega) + omega ^ omega, entries as 2-forms over the base chart.
  AntisymmetricFormMatrix curvature(int chart, const Point& p) const;

private:
  AtlasPtr base_;
  int rank_ = 0;
  std::function<ConnJet(int, const Point&)> jet_;
  std::vector<FrameTransition> frames_;
  std::shared_ptr<DerivedSpaces> derived_;

  friend BundleWithConnection pullback_bundle(const BundleWithConnection& B,
                                              AtlasPtr src,
                                              const std::vector<SmoothMap>& chart_maps);
  friend DerivedSpaces& derived_for(const BundleWithConnection& B);
};

/// Pullback bundle: one map per source chart, each targeting a base chart of
/// B.  Connection coefficients pull back by the chain rule (Jacobian plus its
/// derivative), so curvature commutes with pullback.
BundleWithConnection pullback_bundle(const BundleWithConnection& B, AtlasPtr src,
                                     const std::vector<SmoothMap>& chart_maps);

/// Smooth section in orthonormal components.
class SectionField {
public:
  SectionField() = default;

  static SectionField from_exprs(AtlasPtr domain, int rank,
                                 std::vector<std::vector<Expr>> components);

  AtlasPtr domain() const { return domain_; }
  int rank() const { return rank_; }
  SecJet jet(int chart, const Point& p) const { return jet_(chart, p); }
  std::vector<double> value(int chart, const Point& p) const { return jet_(chart, p).value; }
  double norm2(int chart, const Point& p) const;

  SectionField scaled(double s) const;

private:
  AtlasPtr domain_;
  int rank_ = 0;
  std::function<SecJet(int, const Point&)> jet_;
};

/// Covariant derivative of s at p: sum_i ((ds)_i + sum_j omega_{ij} s_j) (x) e_i,
/// returned as a GradedElement of bidegree (base dim, rank) with |J| = 1.
GradedElement covariant_derivative(const BundleWithConnection& B, const SectionField& s,
                                   int chart, const Point& p);

/// Total space E (up to the fiber radius cap) and the sphere bundle SE.
/// Charts are base charts extended by fiber coordinates x1..xr (resp. the
/// fiber angle psi for rank 2).
struct TotalSpace {
  AtlasPtr atlas;                       // charts aligned with base charts
  std::vector<SmoothMap> projection;    // E -> X, per chart
  std::vector<SmoothMap> zero_section;  // X -> E, per chart
  double radius_cap = 6.0;
};

struct SphereBundle {
  AtlasPtr atlas;                     // charts aligned with base charts
  std::vector<SmoothMap> projection;  // SE -> X
  std::vector<SmoothMap> inclusion;   // SE -> E
  /// Fiber parametrization for rank 2: x(psi) = (cos psi, -sin psi).
  /// (This orientation normalizes the fiber integral of the infinite-time
  /// transgression form to +1; see docs/conventions.md.)
};

const TotalSpace& total_space(const BundleWithConnection& B);
const SphereBundle& sphere_bundle(const BundleWithConnection& B);

/// pi*B over the total space.
const BundleWithConnection& pulled_back_to_total_space(const BundleWithConnection& B);
/// pi~*B over SE.
const BundleWithConnection& pulled_back_to_sphere_bundle(const BundleWithConnection& B);

/// The tautological section x(e) = e of pi*E over the total space.
SectionField tautological_section(const BundleWithConnection& B);
/// Its restriction to SE (unit norm everywhere), rank 2.
SectionField tautological_section_on_sphere(const BundleWithConnection& B);

} // namespace gbc
