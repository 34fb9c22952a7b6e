#pragma once

#include <limits>

#include "gbc/bundle.hpp"
#include "gbc/form_field.hpp"

namespace gbc {

// Euler form, Mathai-Quillen Thom form family, and the transgression forms
// that interpolate them.
//
// With sigma(r) = (-1)^{r(r+1)/2} Berezin sign (berezin.hpp) the rescaled
// element is assembled as
//     Omega_t = (t^2/2)|v|^2  -  t D  +  C,
//     D = sum_i (nabla v)_i (x) e_i,     C = sum_{i<j} R_{ij} e_i e_j,
// so e^{-Omega_t} = e^{-t^2|v|^2/2} exp(t D - C).  The relative signs are
// pinned by the normalization facts (unit Thom fiber integral, Euler form of
// the round sphere integrating to 2, unit fiber integral of the infinite-time
// transgression); see docs/conventions.md.

/// a(k) = (-1)^{k(2k+1)} / (2 pi)^k.
double a_const(int k);

/// Euler form (2 pi)^{-k} Pf(R) as a degree-2k field on the base.
FormField euler_form(const BundleWithConnection& B);

/// Mathai-Quillen Thom form U_t on the total space; closed, with unit fiber
/// integral.  t > 0 (t = 1 gives U).
FormField thom_form(const BundleWithConnection& B, double t = 1.0);

/// T(x e^{-Omega_t}) on the total space (the transgression integrand).
FormField thom_transgression_integrand(const BundleWithConnection& B, double t);

/// v*U_t on the base, evaluated directly from (v, nabla v, R).
FormField section_pullback_thom(const BundleWithConnection& B, const SectionField& v,
                                double t = 1.0);

/// The value of Omega_t at a point (scalar part + nilpotent part).
struct MQElement {
  double scalar = 0.0;      // t^2 |v|^2 / 2
  GradedElement nilpotent;  // -t D + C
};

/// Omega_t over the total space with v = tautological section (v == nullptr)
/// or over the base with an explicit section.
MQElement mq_element(const BundleWithConnection& B, double t, int chart, const Point& p,
                     const SectionField* v = nullptr);

/// Polynomial-in-t form of front ^ exp(tD - C) together with the Gaussian
/// width |v|^2; Berezin integration and exact t-moments turn it into
/// transgression values.
struct TPolynomial {
  std::vector<std::pair<int, GradedElement>> terms; // (power of t, coefficient)
  double width = 0.0;                               // |front|^2 at the point
};

TPolynomial collect_t_polynomial(const GradedElement& front, const GradedElement& D,
                                 const GradedElement& C);

/// Integral of t^m e^{-a t^2/2} dt from 0 to `upper` (finite or infinity).
/// Exact via Gamma / error-function identities.  a = 0 with infinite upper
/// bound raises a divergence error.
double gaussian_moment(int m, double a, double upper);
constexpr double kMomentInfinity = std::numeric_limits<double>::infinity();

/// int_0^1 a(k) T(v ^ e^{-Omega_{t,v}}) dt, degree 2k-1 on the base.
/// d(of it) = euler_form - v*U.
FormField transgression_unit_interval(const BundleWithConnection& B,
                                      const SectionField& v);

/// int_0^t ... on the total space with the tautological section.
FormField transgression_finite(const BundleWithConnection& B, double t_upper);

/// int_0^inf ... restricted to SE, where |x| = 1 makes the integral converge.
/// This is the workbench's Q: d(Q) = euler_form of the pulled-back bundle and
/// its fiber-circle integral is 1.
FormField transgression_infinite(const BundleWithConnection& B);

/// Fiberwise ball-bundle compactification: pullback along y -> y/sqrt(1-|y|^2).
struct BallBundleField {
  AtlasPtr atlas; // base charts extended by fiber coords in the open unit ball
  FormField field;
};
BallBundleField compactify_to_ball(const BundleWithConnection& B, const FormField& f);

} // namespace gbc
