#include "gbc/berezin.hpp"

#include <cmath>

namespace gbc {

int berezin_sign(int r) {
  return (r * (r + 1) / 2) % 2 ? -1 : 1;
}

GradedElement berezin_integral(const GradedElement& a) {
  const int p = a.form_dim(), r = a.fiber_rank();
  const uint32_t top = (r == 0) ? 0u : ((1u << r) - 1);
  const double sgn = berezin_sign(r);
  GradedElement out(p, 0);
  for (auto& [k, v] : a.terms()) {
    if (a.fiber_part(k) != top) continue;
    out.add_coeff(a.form_part(k), 0, sgn * v);
  }
  return out;
}

AntisymmetricFormMatrix AntisymmetricFormMatrix::zero(int n, int p, int r) {
  AntisymmetricFormMatrix m;
  m.entry.assign(n, std::vector<GradedElement>(n, GradedElement(p, r)));
  return m;
}

AntisymmetricFormMatrix AntisymmetricFormMatrix::from_upper(
    int n, const std::vector<GradedElement>& upper) {
  require((int)upper.size() == n * (n - 1) / 2, "wrong number of upper entries");
  require(n > 0, "empty matrix");
  const int p = upper.empty() ? 0 : upper[0].form_dim();
  const int r = upper.empty() ? 0 : upper[0].fiber_rank();
  auto m = zero(n, p, r);
  int idx = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      m.entry[i][j] = upper[idx];
      m.entry[j][i] = upper[idx] * -1.0;
      ++idx;
    }
  return m;
}

AntisymmetricFormMatrix AntisymmetricFormMatrix::from_scalars(
    const std::vector<std::vector<double>>& s) {
  const int n = (int)s.size();
  auto m = zero(n, 0, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m.entry[i][j] = GradedElement::scalar(0, 0, s[i][j]);
  return m;
}

void AntisymmetricFormMatrix::check_antisymmetry(double tol) const {
  const int n = size();
  for (int i = 0; i < n; ++i) {
    require(entry[i][i].is_zero(tol), "nonzero diagonal in antisymmetric matrix");
    for (int j = i + 1; j < n; ++j) {
      GradedElement s = entry[i][j];
      s += entry[j][i];
      require(s.is_zero(tol), "antisymmetry violation beyond tolerance");
    }
  }
}

namespace {

// Pf(A) = sum_{j>0} (-1)^j A[0][j] Pf(A with rows/cols 0,j removed),
// with indices taken from the live list.  No division, so form-valued
// entries are fine.
GradedElement pf_rec(const AntisymmetricFormMatrix& m, std::vector<int>& live) {
  const int n = (int)live.size();
  if (n == 0) {
    // Pf of the empty matrix is 1 in the ambient algebra
    return GradedElement::scalar(m.entry[0][0].form_dim(), m.entry[0][0].fiber_rank(), 1.0);
  }
  int i0 = live[0];
  GradedElement acc(m.entry[0][0].form_dim(), m.entry[0][0].fiber_rank());
  for (int a = 1; a < n; ++a) {
    int j = live[a];
    std::vector<int> rest;
    rest.reserve(n - 2);
    for (int b = 1; b < n; ++b)
      if (b != a) rest.push_back(live[b]);
    GradedElement term = wedge(m.entry[i0][j], pf_rec(m, rest));
    if (a % 2 == 0) term *= -1.0;
    acc += term;
  }
  return acc;
}

} // namespace

GradedElement pfaffian(const AntisymmetricFormMatrix& m) {
  const int n = m.size();
  require(n > 0 && n % 2 == 0, "Pfaffian requires even size");
  m.check_antisymmetry();
  for (auto& row : m.entry)
    for (auto& e : row)
      require(e.is_even(), "Pfaffian entries must have even total degree");
  std::vector<int> live(n);
  for (int i = 0; i < n; ++i) live[i] = i;
  return pf_rec(m, live);
}

GradedElement exp_even(const GradedElement& a, double tol) {
  const int p = a.form_dim(), r = a.fiber_rank();
  require(a.is_even(tol), "exp of element with odd-degree component");
  double s = a.coeff(0, 0);
  GradedElement n = a;
  n.set_coeff(0, 0, 0.0);
  n.prune(0.0);

  GradedElement result = GradedElement::scalar(p, r, 1.0);
  GradedElement power = GradedElement::scalar(p, r, 1.0);
  const int max_j = (p + r) / 2;
  double fact = 1.0;
  for (int j = 1; j <= max_j; ++j) {
    power = wedge(power, n);
    if (power.is_zero(0.0)) break;
    fact *= j;
    result += power * (1.0 / fact);
  }
  result *= std::exp(s);
  return result;
}

} // namespace gbc
