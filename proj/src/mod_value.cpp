#include "gbc/mod_value.hpp"

#include <cmath>

namespace gbc {

ModValue mod_reduce(double x, double modulus) {
  require(modulus > 0, "modulus must be positive");
  double r = x - modulus * std::floor(x / modulus);
  if (r >= modulus) r -= modulus; // floor roundoff at the seam
  return {r, modulus};
}

double mod_distance(const ModValue& a, const ModValue& b) {
  require(a.modulus == b.modulus, "modulus mismatch");
  double d = std::abs(a.rep - b.rep);
  return std::min(d, a.modulus - d);
}

double distance_to_lattice(double x, double modulus) {
  return mod_distance(mod_reduce(x, modulus), ModValue{0.0, modulus});
}

double parse_coefficient_ring(const std::string& text) {
  if (text == "Z" || text == "z") return 1.0;
  if (text == "Q" || text == "q" || text == "R" || text == "r")
    fail("coefficient ring " + text +
         " is dense in R; numeric mod-A reduction is only defined for A = cZ "
         "(pass a positive modulus c)");
  try {
    double c = std::stod(text);
    require(c > 0, "modulus must be positive");
    return c;
  } catch (const Error&) {
    throw;
  } catch (...) {
    fail("cannot parse coefficient ring '" + text + "' (expected Z or a positive real)");
  }
}

} // namespace gbc
