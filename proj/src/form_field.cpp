#include "gbc/form_field.hpp"

#include <bit>
#include <cmath>

namespace gbc {

FormField::FormField(AtlasPtr domain, int degree, int fiber_rank, Eval eval, Eval analytic_d)
    : domain_(std::move(domain)),
      degree_(degree),
      fiber_rank_(fiber_rank),
      eval_(std::move(eval)),
      analytic_d_(std::move(analytic_d)) {}

FormField FormField::from_exprs(
    AtlasPtr domain, int degree,
    std::vector<std::vector<std::pair<uint32_t, Expr>>> coeffs) {
  require(coeffs.size() == domain->charts.size(),
          "coefficients must be given for every chart");
  const int n = domain->dim();
  auto data = std::make_shared<std::vector<std::vector<std::pair<uint32_t, Expr>>>>(
      std::move(coeffs));

  Eval eval = [data, n](int chart, const Point& p) {
    GradedElement v(n, 0);
    for (auto& [mask, e] : (*data)[chart]) v.add_coeff(mask, 0, e.eval(p));
    return v;
  };

  // analytic d: d(f_I dx_I) = sum_a (d_a f_I) dx_a ^ dx_I
  auto ddata = std::make_shared<std::vector<std::vector<std::pair<uint32_t, Expr>>>>();
  ddata->resize(data->size());
  for (size_t c = 0; c < data->size(); ++c) {
    for (auto& [mask, e] : (*data)[c]) {
      for (int a = 0; a < n; ++a) {
        if (mask & (1u << a)) continue;
        (*ddata)[c].push_back({mask | (1u << a), Expr()}); // placeholder, fixed below
        (*ddata)[c].back().second = e.derivative(a);
      }
    }
  }
  Eval danalytic = [ddata, data, n](int chart, const Point& p) {
    GradedElement v(n, 0);
    size_t idx = 0;
    for (auto& [mask, e] : (*data)[chart]) {
      for (int a = 0; a < n; ++a) {
        if (mask & (1u << a)) continue;
        const auto& [dmask, de] = (*ddata)[chart][idx++];
        int s = merge_sign(1u << a, mask);
        v.add_coeff(dmask, 0, s * de.eval(p));
      }
    }
    return v;
  };
  return FormField(std::move(domain), degree, 0, std::move(eval), std::move(danalytic));
}

FormField FormField::zero(AtlasPtr domain, int degree, int fiber_rank) {
  const int n = domain->dim();
  Eval z = [n, fiber_rank](int, const Point&) { return GradedElement(n, fiber_rank); };
  return FormField(std::move(domain), degree, fiber_rank, z, z);
}

GradedElement FormField::operator()(int chart, const Point& p) const {
  require(eval_ != nullptr, "evaluating empty FormField");
  return eval_(chart, p);
}

FormField FormField::operator+(const FormField& o) const {
  require(domain_ == o.domain_, "field domains differ");
  Eval a = eval_, b = o.eval_;
  return FormField(domain_, std::max(degree_, o.degree_), fiber_rank_,
                   [a, b](int c, const Point& p) { return a(c, p) + b(c, p); });
}

FormField FormField::operator-(const FormField& o) const {
  require(domain_ == o.domain_, "field domains differ");
  Eval a = eval_, b = o.eval_;
  return FormField(domain_, std::max(degree_, o.degree_), fiber_rank_,
                   [a, b](int c, const Point& p) { return a(c, p) - b(c, p); });
}

FormField FormField::scaled(double s) const {
  Eval a = eval_;
  Eval d = analytic_d_;
  return FormField(domain_, degree_, fiber_rank_,
                   [a, s](int c, const Point& p) { return a(c, p) * s; },
                   d ? Eval([d, s](int c, const Point& p) { return d(c, p) * s; })
                     : Eval());
}

GradedElement exterior_derivative_fd(const FormField& f, int chart, const Point& p,
                                     double h) {
  const auto& ch = f.domain()->charts[chart];
  require(ch.contains(p, 2 * h), "point too close to chart boundary for d");
  const int n = ch.dim();
  GradedElement out(n, f.fiber_rank());
  for (int a = 0; a < n; ++a) {
    Point q = p;
    auto at = [&](double offset) {
      q[a] = p[a] + offset;
      return f(chart, q);
    };
    GradedElement da = at(-2 * h);
    da -= at(-h) * 8.0;
    da += at(h) * 8.0;
    da -= at(2 * h);
    da *= 1.0 / (12 * h);
    // dx_a ^ (partial_a f)
    for (auto& [k, v] : da.terms()) {
      if (v == 0.0) continue;
      int s = merge_sign(1u << a, k);
      if (s == 0) continue;
      out.add_coeff(out.form_part(k | (1u << a)), out.fiber_part(k), s * v);
    }
  }
  return out;
}

GradedElement exterior_derivative(const FormField& f, int chart, const Point& p,
                                  double h) {
  if (f.analytic_d_) return f.analytic_d_(chart, p);
  return exterior_derivative_fd(f, chart, p, h);
}

FormField exterior_derivative_field(const FormField& f, double h) {
  if (f.analytic_d_) {
    return FormField(f.domain(), f.degree() + 1, f.fiber_rank(), f.analytic_d_);
  }
  FormField ff = f;
  return FormField(f.domain(), f.degree() + 1, f.fiber_rank(),
                   [ff, h](int c, const Point& p) {
                     return exterior_derivative_fd(ff, c, p, h);
                   });
}

GradedElement pullback_value(const GradedElement& v, const Jacobian& J, int target_p) {
  const int src_p = v.form_dim(); // dimensions of the map's source
  const int dst_p = (int)J.size();
  (void)dst_p;
  GradedElement out(target_p, v.fiber_rank());
  // m*(dx_I) = sum_{|A|=|I|} det(J[I rows, A cols]) du_A
  for (auto& [k, coeff] : v.terms()) {
    if (coeff == 0.0) continue;
    uint32_t I = v.form_part(k);
    uint32_t Jb = v.fiber_part(k);
    int deg = std::popcount(I);
    if (deg == 0) {
      out.add_coeff(0, Jb, coeff);
      continue;
    }
    if (deg > target_p) continue;
    std::vector<int> rows;
    for (int i = 0; i < src_p; ++i)
      if (I & (1u << i)) rows.push_back(i);
    // iterate over ascending |A|=deg subsets of target axes
    std::vector<int> cols(deg);
    for (int i = 0; i < deg; ++i) cols[i] = i;
    for (;;) {
      // determinant of the deg x deg minor
      double det = 0.0;
      if (deg == 1) {
        det = J[rows[0]][cols[0]];
      } else if (deg == 2) {
        det = J[rows[0]][cols[0]] * J[rows[1]][cols[1]] -
              J[rows[0]][cols[1]] * J[rows[1]][cols[0]];
      } else {
        // small general case by Laplace expansion
        std::vector<std::vector<double>> M(deg, std::vector<double>(deg));
        for (int i = 0; i < deg; ++i)
          for (int j = 0; j < deg; ++j) M[i][j] = J[rows[i]][cols[j]];
        std::function<double(std::vector<std::vector<double>>&)> dd =
            [&](std::vector<std::vector<double>>& A) -> double {
          const int n = (int)A.size();
          if (n == 1) return A[0][0];
          double acc = 0.0;
          for (int j = 0; j < n; ++j) {
            if (A[0][j] == 0.0) continue;
            std::vector<std::vector<double>> B(n - 1, std::vector<double>(n - 1));
            for (int i = 1; i < n; ++i) {
              int jj = 0;
              for (int q = 0; q < n; ++q) {
                if (q == j) continue;
                B[i - 1][jj++] = A[i][q];
              }
            }
            acc += ((j % 2) ? -1.0 : 1.0) * A[0][j] * dd(B);
          }
          return acc;
        };
        det = dd(M);
      }
      if (det != 0.0) {
        uint32_t A = 0;
        for (int c : cols) A |= (1u << c);
        out.add_coeff(A, Jb, coeff * det);
      }
      // next combination
      int i = deg - 1;
      while (i >= 0 && cols[i] == target_p - deg + i) --i;
      if (i < 0) break;
      ++cols[i];
      for (int j = i + 1; j < deg; ++j) cols[j] = cols[j - 1] + 1;
    }
  }
  return out;
}

FormField pullback_form(const SmoothMap& m, const FormField& f) {
  require(f.domain() == m.target_atlas() || m.target_atlas() == nullptr,
          "pullback chart mismatch: map target is not the field's domain");
  const int target_p = m.source_dim();
  const int dst_chart = m.target_chart();
  FormField ff = f;
  SmoothMap mm = m;
  auto eval = [ff, mm, dst_chart, target_p](int chart, const Point& p) {
    require(chart == mm.source_chart() || mm.source_chart() < 0,
            "pullback evaluated on a chart the map is not defined on");
    Point q = mm(p);
    GradedElement v = ff(dst_chart, q);
    Jacobian J = mm.jacobian(p);
    return pullback_value(v, J, target_p);
  };
  return FormField(m.source_atlas(), f.degree(), f.fiber_rank(), eval);
}

} // namespace gbc
