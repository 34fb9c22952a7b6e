#pragma once

#include <functional>

#include "gbc/chart.hpp"
#include "gbc/graded.hpp"
#include "gbc/smooth_map.hpp"

namespace gbc {

constexpr double kDerivStep = 1e-4;  // exterior-derivative step, chart units
constexpr double kDerivTol = 1e-6;   // derivative agreement tolerance

/// A smooth assignment of GradedElement values to chart points.  Evaluators
/// are pure and immutable after construction, so concurrent evaluation is
/// safe.  Fields constructed from expressions carry exact analytic exterior
/// derivatives; pipeline-built fields use finite differences.
class FormField {
public:
  using Eval = std::function<GradedElement(int chart, const Point&)>;

  FormField() = default;
  FormField(AtlasPtr domain, int degree, int fiber_rank, Eval eval,
            Eval analytic_d = nullptr);

  /// Ordinary k-form from per-chart coefficient expressions.
  /// coeffs[chart] maps a form mask to its coefficient expression.
  static FormField from_exprs(AtlasPtr domain, int degree,
                              std::vector<std::vector<std::pair<uint32_t, Expr>>> coeffs);

  static FormField zero(AtlasPtr domain, int degree, int fiber_rank = 0);

  GradedElement operator()(int chart, const Point& p) const;

  const AtlasPtr& domain() const { return domain_; }
  int degree() const { return degree_; }
  int fiber_rank() const { return fiber_rank_; }
  bool has_analytic_d() const { return analytic_d_ != nullptr; }

  FormField operator+(const FormField& o) const;
  FormField operator-(const FormField& o) const;
  FormField scaled(double s) const;

  friend FormField pullback_form(const SmoothMap& m, const FormField& f);
  friend GradedElement exterior_derivative(const FormField& f, int chart,
                                           const Point& p, double h);
  friend FormField exterior_derivative_field(const FormField& f, double h);

private:
  AtlasPtr domain_;
  int degree_ = 0;
  int fiber_rank_ = 0;
  Eval eval_;
  Eval analytic_d_;
};

/// d(f) at a point: analytic evaluator when the field carries one, otherwise
/// 4th-order central differences of the coefficients (step h, which must fit
/// inside the chart box around p).
GradedElement exterior_derivative(const FormField& f, int chart, const Point& p,
                                  double h = kDerivStep);

/// Finite-difference d only, ignoring any analytic evaluator (cross-checks).
GradedElement exterior_derivative_fd(const FormField& f, int chart, const Point& p,
                                     double h = kDerivStep);

/// d(f) as a field.
FormField exterior_derivative_field(const FormField& f, double h = kDerivStep);

/// Pullback m*f.  The form factor transforms by minor determinants of the
/// Jacobian; the fiber factor is transported by the identity.
FormField pullback_form(const SmoothMap& m, const FormField& f);

/// Pullback of a single value given the Jacobian at the evaluation point.
GradedElement pullback_value(const GradedElement& v, const Jacobian& J, int target_p);

} // namespace gbc
