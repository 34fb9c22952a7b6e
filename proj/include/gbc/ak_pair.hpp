#pragma once

#include <optional>

#include "gbc/chain.hpp"
#include "gbc/form_field.hpp"
#include "gbc/mod_value.hpp"

namespace gbc {

/// Singular locus of a form with singularities: a finite list of parametrized
/// cells.  Distances are measured in embedding space when the charts declare
/// an embedding (so points in different charts compare correctly), directly
/// in chart coordinates otherwise.
class SingularSet {
public:
  SingularSet() = default;
  explicit SingularSet(std::vector<ParamSimplex> cells, int samples_per_axis = 96);

  bool empty() const { return samples_.empty(); }
  /// Distance from the embedded query point to the sampled set (+inf if empty).
  double distance(const Chart& chart, const Point& p) const;

private:
  std::vector<Point> samples_; // embedded sample cloud
};

/// An (A,k)-pair: a k-form omega and (k-1)-form phi with controlled singular
/// sets, dphi = omega off e(phi), and all admissible periods in A = cZ.
struct AkPair {
  int degree = 0;
  double modulus = 1.0;
  double clearance = 1e-3; // minimum distance from chains to singular sets
  FormField omega;
  FormField phi;
  SingularSet e_omega; // subset of e_phi
  SingularSet e_phi;

  AkPair with_scaled_omega(double s) const {
    AkPair q = *this;
    q.omega = omega.scaled(s);
    return q;
  }
};

/// Admissibility: |c| clears e(omega) and |boundary c| clears e(phi), both by
/// more than the pair's clearance, sampled on a dense parameter grid.
bool is_admissible(const AkPair& p, const Chain& c, int grid_per_axis = 64);

/// R[(omega, phi), c] = int_c omega - int_{boundary c} phi.
/// Throws if the chain is not admissible.
double period(const AkPair& p, const Chain& c, int order = kDefaultQuadOrder);

struct PairCheckReport {
  int admissible = 0;
  int skipped = 0;
  double max_residual = 0.0; // mod-distance of periods to the lattice
  bool vacuous = false;      // no admissible sample
  bool pass(double tol) const { return !vacuous && max_residual < tol; }
};

/// Integrality of periods over a battery of sample chains.
PairCheckReport check_pair(const AkPair& p, const std::vector<Chain>& samples,
                           int order = kDefaultQuadOrder);

/// s(phi)(z) = int_{c_k} omega + int_{z'} phi mod A for a decomposition
/// z = boundary(c_k) + z'.  Only the clearance of z' from e(phi) is enforced
/// here; the decomposition itself can be certified with
/// decomposition_residual below when z is supplied.
ModValue eval_induced_character(const AkPair& p, const Chain& c_k, const Chain& z_prime,
                                int order = kDefaultQuadOrder);

/// Witness for z = boundary(c_k) + z': the battery of closed test forms is
/// integrated against the difference; returns the max |residual|.
double decomposition_residual(const Chain& z, const Chain& c_k, const Chain& z_prime,
                              const std::vector<FormField>& closed_tests,
                              int order = kDefaultQuadOrder);

/// Mod-distance between the evaluations of two decompositions of one cycle.
double lemma1_check(const AkPair& p, const std::pair<Chain, Chain>& dec1,
                    const std::pair<Chain, Chain>& dec2, int order = kDefaultQuadOrder);

} // namespace gbc
