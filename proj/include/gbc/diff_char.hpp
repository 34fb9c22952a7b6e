#pragma once

#include "gbc/chain.hpp"
#include "gbc/mathai_quillen.hpp"
#include "gbc/mod_value.hpp"

namespace gbc {

/// A differential character as an evaluable object: a homomorphism from
/// (k-1)-cycles to R/cZ whose boundary values integrate the curvature field.
struct DifferentialCharacter {
  int degree = 0;
  double modulus = 1.0;
  FormField curvature;
  std::function<ModValue(const Chain&)> eval;

  ModValue operator()(const Chain& z) const { return eval(z); }
};

/// i2: a (k-1)-form acts on (k-1)-cycles by integration mod A; its curvature
/// is the exterior derivative.
DifferentialCharacter i2(const FormField& omega, double modulus = 1.0,
                         int order = kDefaultQuadOrder);

/// Decomposition z = projection_*(y) + boundary(w) with y a cycle in SE and
/// w a filler in the base.
struct SphereDecomposition {
  Chain y; // in SE
  Chain w; // in X
};

/// Battery of closed test 1-forms on the base (exact forms from random
/// polynomials in the embedding coordinates, plus torus/circle angle forms
/// where the atlas has them).
std::vector<FormField> closed_test_forms(AtlasPtr atlas, int count = 8,
                                         unsigned seed = 2026);

/// max |integral| of the battery over boundary(z); small for cycles.
double cycle_residual(const Chain& z, const std::vector<FormField>& tests,
                      int order = kDefaultQuadOrder);

/// max |int_z f - int_{proj_* y} f - int_{boundary w} f| over the battery.
double sphere_decomposition_residual(const BundleWithConnection& B, const Chain& z,
                                     const SphereDecomposition& dec,
                                     const std::vector<FormField>& tests,
                                     int order = kDefaultQuadOrder);

/// Differential Euler character: int_y Q + int_w euler_form, mod 1.
ModValue euler_character_eval(const BundleWithConnection& B,
                              const SphereDecomposition& dec,
                              int order = kDefaultQuadOrder);

/// Pulled-back differential Thom character:
/// int_y (Q - proj* transgression(v)) + int_w v*U, mod 1.
ModValue thom_pullback_character_eval(const BundleWithConnection& B,
                                      const SectionField& v,
                                      const SphereDecomposition& dec,
                                      int order = kDefaultQuadOrder);

/// i2 of the unit-interval transgression, evaluated on the cycle z.
ModValue rhs_eval(const BundleWithConnection& B, const SectionField& v, const Chain& z,
                  int order = kDefaultQuadOrder);

struct GbcCase {
  std::string cycle_id;
  Chain z;
  std::vector<SphereDecomposition> decompositions; // >= 1
};

struct GbcCaseResult {
  std::string cycle_id;
  double lhs_euler = 0.0;       // first decomposition values
  double lhs_thom = 0.0;
  double rhs = 0.0;
  double residual = 0.0;        // mod-distance( lhs1 - lhs2, rhs )
  double decomposition_spread = 0.0; // well-definedness across decompositions
  double witness_residual = 0.0;     // decomposition/cycle witness
  bool pass = false;
};

struct GbcReport {
  std::vector<GbcCaseResult> cases;
  double tolerance = 1e-5;
  bool pass = true;
};

/// Checks the lift of the Gauss-Bonnet-Chern identity to differential
/// characters case by case: euler - thom_pullback = i2(transgression) mod 1.
GbcReport verify_gbc_identity(const BundleWithConnection& B, const SectionField& v,
                              const std::vector<GbcCase>& cases,
                              double tolerance = 1e-5,
                              int order = kDefaultQuadOrder);

/// Lift of a 1-cycle into SE along a section nonvanishing on its support:
/// each cell gains the continuously unwrapped fiber angle of s/|s|.
Chain lift_by_section(const BundleWithConnection& B, const Chain& z,
                      const SectionField& s);

/// Winding of the section's fiber angle along a closed 1-cell, counted
/// counterclockwise in the frame components (s1, s2).
double section_winding(const SectionField& s, const ParamSimplex& loop, int samples = 2048);

/// Rotation angle (radians) of parallel transport around a closed loop in the
/// base, by RK4 on u' = -omega(c')u.  Independent holonomy oracle for rank 2.
double holonomy_angle(const BundleWithConnection& B, const ParamSimplex& loop,
                      int steps = 4096);

} // namespace gbc
