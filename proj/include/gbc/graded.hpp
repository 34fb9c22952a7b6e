#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "gbc/error.hpp"

namespace gbc {

// An element of Lambda(R^p)* (x) Lambda(R^r): form factor wedged with a fiber
// factor.  Both factors are spanned by odd generators; a basis monomial is a
// subset I of the p form generators together with a subset J of the r fiber
// generators, stored as a single bitmask with the fiber bits shifted above the
// form bits.  All signs reduce to transposition counts when merging masks, so
// no separate sign convention can drift between the two factors.

constexpr double kCoeffEps = 1e-12; // equality threshold after normalization

class GradedElement {
public:
  GradedElement() : p_(0), r_(0) {}
  GradedElement(int p, int r);

  static GradedElement scalar(int p, int r, double value);
  /// Basis monomial from explicit masks (bit i of form_mask = generator dx_{i+1}).
  static GradedElement basis(int p, int r, uint32_t form_mask, uint32_t fiber_mask,
                             double coeff = 1.0);

  int form_dim() const { return p_; }
  int fiber_rank() const { return r_; }

  bool same_shape(const GradedElement& o) const { return p_ == o.p_ && r_ == o.r_; }

  /// Coefficient of the monomial (I, J); absent keys are exactly 0.
  double coeff(uint32_t form_mask, uint32_t fiber_mask) const;
  void set_coeff(uint32_t form_mask, uint32_t fiber_mask, double value);
  void add_coeff(uint32_t form_mask, uint32_t fiber_mask, double value);

  bool is_zero(double tol = kCoeffEps) const;
  /// Largest |coefficient|.
  double max_abs() const;

  /// Maximal |I|+|J| over nonzero monomials; -1 for the zero element.
  int top_degree(double tol = kCoeffEps) const;
  /// True if every nonzero monomial has even total degree.
  bool is_even(double tol = kCoeffEps) const;

  /// Drop coefficients with |c| <= tol.
  void prune(double tol = kCoeffEps);

  GradedElement& operator+=(const GradedElement& o);
  GradedElement& operator-=(const GradedElement& o);
  GradedElement& operator*=(double s);

  friend GradedElement operator+(GradedElement a, const GradedElement& b) { return a += b; }
  friend GradedElement operator-(GradedElement a, const GradedElement& b) { return a -= b; }
  friend GradedElement operator*(GradedElement a, double s) { return a *= s; }
  friend GradedElement operator*(double s, GradedElement a) { return a *= s; }

  bool approx_equal(const GradedElement& o, double tol = kCoeffEps) const;

  // raw access for Berezin projection and the exterior derivative
  const std::map<uint32_t, double>& terms() const { return terms_; }

  uint32_t fiber_shift() const { return (uint32_t)p_; }
  uint32_t pack(uint32_t form_mask, uint32_t fiber_mask) const {
    return form_mask | (fiber_mask << p_);
  }
  uint32_t form_part(uint32_t key) const { return key & (((uint32_t)1 << p_) - 1); }
  uint32_t fiber_part(uint32_t key) const { return key >> p_; }

  std::string str() const;

  friend GradedElement wedge(const GradedElement& a, const GradedElement& b);

private:
  int p_, r_;
  std::map<uint32_t, double> terms_; // key = form_mask | fiber_mask << p_
};

/// Graded product.  Bilinear, associative; the sign follows the Koszul rule
/// with total degree |I|+|J|.  Throws on shape mismatch.
GradedElement wedge(const GradedElement& a, const GradedElement& b);

/// Sign (+1/-1/0) of merging two generator masks; 0 when they intersect.
int merge_sign(uint32_t a, uint32_t b);

} // namespace gbc
