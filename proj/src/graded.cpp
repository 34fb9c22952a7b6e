#include "gbc/graded.hpp"

#include <bit>
#include <cmath>
#include <sstream>

namespace gbc {

GradedElement::GradedElement(int p, int r) : p_(p), r_(r) {
  require(p >= 0 && r >= 0 && p + r <= 24, "unsupported bidegree signature");
}

GradedElement GradedElement::scalar(int p, int r, double value) {
  GradedElement e(p, r);
  if (value != 0.0) e.terms_[0] = value;
  return e;
}

GradedElement GradedElement::basis(int p, int r, uint32_t form_mask,
                                   uint32_t fiber_mask, double coeff) {
  GradedElement e(p, r);
  require(form_mask < (1u << p) && fiber_mask < (1u << r),
          "basis mask outside declared bidegree");
  if (coeff != 0.0) e.terms_[e.pack(form_mask, fiber_mask)] = coeff;
  return e;
}

double GradedElement::coeff(uint32_t form_mask, uint32_t fiber_mask) const {
  auto it = terms_.find(pack(form_mask, fiber_mask));
  return it == terms_.end() ? 0.0 : it->second;
}

void GradedElement::set_coeff(uint32_t form_mask, uint32_t fiber_mask, double value) {
  if (value == 0.0)
    terms_.erase(pack(form_mask, fiber_mask));
  else
    terms_[pack(form_mask, fiber_mask)] = value;
}

void GradedElement::add_coeff(uint32_t form_mask, uint32_t fiber_mask, double value) {
  if (value == 0.0) return;
  terms_[pack(form_mask, fiber_mask)] += value;
}

bool GradedElement::is_zero(double tol) const {
  for (auto& [k, v] : terms_)
    if (std::abs(v) > tol) return false;
  return true;
}

double GradedElement::max_abs() const {
  double m = 0.0;
  for (auto& [k, v] : terms_) m = std::max(m, std::abs(v));
  return m;
}

int GradedElement::top_degree(double tol) const {
  int deg = -1;
  for (auto& [k, v] : terms_)
    if (std::abs(v) > tol) deg = std::max(deg, std::popcount(k));
  return deg;
}

bool GradedElement::is_even(double tol) const {
  for (auto& [k, v] : terms_)
    if (std::abs(v) > tol && (std::popcount(k) & 1)) return false;
  return true;
}

void GradedElement::prune(double tol) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (std::abs(it->second) <= tol)
      it = terms_.erase(it);
    else
      ++it;
  }
}

GradedElement& GradedElement::operator+=(const GradedElement& o) {
  require(same_shape(o), "bidegree mismatch in sum");
  for (auto& [k, v] : o.terms_) terms_[k] += v;
  return *this;
}

GradedElement& GradedElement::operator-=(const GradedElement& o) {
  require(same_shape(o), "bidegree mismatch in difference");
  for (auto& [k, v] : o.terms_) terms_[k] -= v;
  return *this;
}

GradedElement& GradedElement::operator*=(double s) {
  for (auto& [k, v] : terms_) v *= s;
  return *this;
}

bool GradedElement::approx_equal(const GradedElement& o, double tol) const {
  if (!same_shape(o)) return false;
  GradedElement d = *this;
  d -= o;
  return d.is_zero(tol);
}

std::string GradedElement::str() const {
  std::ostringstream out;
  bool first = true;
  for (auto& [k, v] : terms_) {
    if (v == 0.0) continue;
    if (!first) out << " + ";
    first = false;
    out << v;
    uint32_t fm = form_part(k), jb = fiber_part(k);
    for (int i = 0; i < p_; ++i)
      if (fm & (1u << i)) out << " dx" << (i + 1);
    for (int j = 0; j < r_; ++j)
      if (jb & (1u << j)) out << " e" << (j + 1);
  }
  if (first) out << "0";
  return out.str();
}

int merge_sign(uint32_t a, uint32_t b) {
  if (a & b) return 0;
  // parity of #{(x in a, y in b) : x > y}
  int inv = 0;
  uint32_t bb = b;
  while (bb) {
    int i = std::countr_zero(bb);
    bb &= bb - 1;
    inv += std::popcount(a >> (i + 1));
  }
  return (inv & 1) ? -1 : 1;
}

GradedElement wedge(const GradedElement& a, const GradedElement& b) {
  require(a.same_shape(b), "bidegree mismatch in wedge");
  GradedElement out(a.form_dim(), a.fiber_rank());
  for (auto& [ka, va] : a.terms()) {
    if (va == 0.0) continue;
    for (auto& [kb, vb] : b.terms()) {
      int s = merge_sign(ka, kb);
      if (s == 0 || vb == 0.0) continue;
      out.terms_[ka | kb] += s * va * vb;
    }
  }
  return out;
}

} // namespace gbc
