#pragma once

#include <string>

#include "gbc/error.hpp"

namespace gbc {

/// A real number reduced against the subgroup cZ of R, representative in [0, c).
struct ModValue {
  double rep = 0.0;
  double modulus = 1.0;
};

/// x mod cZ.  Throws for c <= 0.
ModValue mod_reduce(double x, double modulus = 1.0);

/// Circle distance min(|a-b|, c-|a-b|).  Throws on modulus mismatch.
double mod_distance(const ModValue& a, const ModValue& b);

inline double mod_distance(const ModValue& a, double b) {
  return mod_distance(a, mod_reduce(b, a.modulus));
}

/// Distance from x mod c to the nearest multiple of c.
double distance_to_lattice(double x, double modulus = 1.0);

/// Parse a coefficient-ring spec: "Z", a positive real c (meaning cZ), or
/// "c*Z:<value>".  Dense subrings ("Q", "R") carry no meaningful numeric
/// reduction and are rejected.
double parse_coefficient_ring(const std::string& text);

} // namespace gbc
