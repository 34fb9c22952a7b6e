#pragma once

#include <vector>

#include "gbc/graded.hpp"

namespace gbc {

// Berezin integral, Pfaffian, and the exponential of even elements.
//
// Sign convention: the Berezin integral of the top fiber monomial
// e_1 ^ ... ^ e_r is sigma(r) = (-1)^{r(r+1)/2}, so sigma(2) = -1 and
// sigma(4) = +1.  The convention is pinned operationally by the two
// normalization facts "fiber integral of the Thom form = +1" and
// "integral of the Euler form of the round 2-sphere's tangent bundle = +2";
// see docs/conventions.md.

/// sigma(r) above.
int berezin_sign(int r);

/// Projects onto the form-factor coefficient of e_1 ^ ... ^ e_r, multiplied
/// by sigma(r).  The result has fiber rank 0.
GradedElement berezin_integral(const GradedElement& a);

/// Square matrix of even GradedElement entries with M[i][j] = -M[j][i].
struct AntisymmetricFormMatrix {
  std::vector<std::vector<GradedElement>> entry;

  int size() const { return (int)entry.size(); }
  static AntisymmetricFormMatrix zero(int n, int p, int r);
  /// From the strictly-upper-triangular entries, row major; lower triangle
  /// filled by antisymmetry.
  static AntisymmetricFormMatrix from_upper(int n, const std::vector<GradedElement>& upper);
  static AntisymmetricFormMatrix from_scalars(const std::vector<std::vector<double>>& m);

  /// Throws if |M[i][j] + M[j][i]| or a diagonal entry exceeds tol.
  void check_antisymmetry(double tol = kCoeffEps) const;
};

/// Combinatorial Pfaffian over perfect matchings; entries must commute
/// (even total degree).  Throws for odd size or broken antisymmetry.
GradedElement pfaffian(const AntisymmetricFormMatrix& m);

/// exp of an even element: splits a = s*1 + n and returns
/// e^s * sum_{j<=floor((p+r)/2)} n^j / j!, exact by nilpotency.
/// Throws if a has an odd-degree component above tol.
GradedElement exp_even(const GradedElement& a, double tol = kCoeffEps);

} // namespace gbc
