#include "gbc/mathai_quillen.hpp"

#include <cmath>

namespace gbc {

double a_const(int k) {
  require(k >= 1, "a(k) needs k >= 1");
  double mag = std::pow(2 * M_PI, -k);
  return (k % 2) ? -mag : mag;
}

namespace {

// curvature term C = sum_{i<j} R_ij e_i e_j in the (p, r) algebra
GradedElement curvature_term(const AntisymmetricFormMatrix& R, int p, int r) {
  GradedElement C(p, r);
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) {
      for (auto& [k, v] : R.entry[i][j].terms())
        C.add_coeff(R.entry[i][j].form_part(k), (1u << i) | (1u << j), v);
    }
  return C;
}

struct MQParts {
  GradedElement front; // v_hat = sum v_i e_i
  GradedElement D;     // sum (nabla v)_i (x) e_i
  GradedElement C;     // sum_{i<j} R_ij e_i e_j
  double width = 0.0;  // |v|^2
  int p = 0, r = 0;
};

// Assembly over the total space with the tautological section.
MQParts parts_total_space(const BundleWithConnection& B, int chart, const Point& p) {
  const int n = B.base()->dim();
  const int r = B.rank();
  const int pt = n + r;
  Point b(p.begin(), p.begin() + n);
  ConnJet jet = B.connection_jet(chart, b);
  MQParts mp;
  mp.p = pt;
  mp.r = r;
  mp.front = GradedElement(pt, r);
  mp.D = GradedElement(pt, r);
  for (int i = 0; i < r; ++i) {
    double xi = p[n + i];
    mp.width += xi * xi;
    mp.front.add_coeff(0, 1u << i, xi);
    mp.D.add_coeff(1u << (n + i), 1u << i, 1.0); // dx_i
    for (int a = 0; a < n; ++a) {
      double c = 0.0;
      for (int j = 0; j < r; ++j) c += jet.value[a][i][j] * p[n + j];
      mp.D.add_coeff(1u << a, 1u << i, c);
    }
  }
  mp.C = curvature_term(B.curvature(chart, b), pt, r);
  return mp;
}

// Assembly on the base with an explicit section.
MQParts parts_section(const BundleWithConnection& B, const SectionField& v, int chart,
                      const Point& p) {
  const int n = B.base()->dim();
  const int r = B.rank();
  ConnJet jet = B.connection_jet(chart, p);
  SecJet sj = v.jet(chart, p);
  MQParts mp;
  mp.p = n;
  mp.r = r;
  mp.front = GradedElement(n, r);
  mp.D = GradedElement(n, r);
  for (int i = 0; i < r; ++i) {
    mp.width += sj.value[i] * sj.value[i];
    mp.front.add_coeff(0, 1u << i, sj.value[i]);
    for (int a = 0; a < n; ++a) {
      double c = sj.deriv[a][i];
      for (int j = 0; j < r; ++j) c += jet.value[a][i][j] * sj.value[j];
      mp.D.add_coeff(1u << a, 1u << i, c);
    }
  }
  mp.C = curvature_term(B.curvature(chart, p), n, r);
  return mp;
}

// Assembly on SE (rank 2, fiber angle psi, x(psi) = (cos psi, -sin psi)).
MQParts parts_sphere(const BundleWithConnection& B, int chart, const Point& p) {
  const int n = B.base()->dim();
  const int r = B.rank();
  require(r == 2, "sphere-bundle assembly is rank-2");
  const int pt = n + 1;
  Point b(p.begin(), p.begin() + n);
  const double psi = p[n];
  const double x[2] = {std::cos(psi), -std::sin(psi)};
  const double dx_dpsi[2] = {-std::sin(psi), -std::cos(psi)};
  ConnJet jet = B.connection_jet(chart, b);
  MQParts mp;
  mp.p = pt;
  mp.r = r;
  mp.width = 1.0;
  mp.front = GradedElement(pt, r);
  mp.D = GradedElement(pt, r);
  for (int i = 0; i < r; ++i) {
    mp.front.add_coeff(0, 1u << i, x[i]);
    mp.D.add_coeff(1u << n, 1u << i, dx_dpsi[i]); // d(x_i)/dpsi dpsi
    for (int a = 0; a < n; ++a) {
      double c = 0.0;
      for (int j = 0; j < r; ++j) c += jet.value[a][i][j] * x[j];
      mp.D.add_coeff(1u << a, 1u << i, c);
    }
  }
  mp.C = curvature_term(B.curvature(chart, b), pt, r);
  return mp;
}

GradedElement exp_nilpotent(const MQParts& mp, double t) {
  GradedElement arg = mp.D * t;
  arg -= mp.C;
  return exp_even(arg);
}

} // namespace

FormField euler_form(const BundleWithConnection& B) {
  require(B.rank() % 2 == 0, "Euler form needs even rank");
  const int k = B.rank() / 2;
  const double scale = std::pow(2 * M_PI, -k);
  BundleWithConnection bb = B;
  auto eval = [bb, scale](int chart, const Point& p) {
    return pfaffian(bb.curvature(chart, p)) * scale;
  };
  return FormField(B.base(), B.rank(), 0, eval);
}

FormField thom_form(const BundleWithConnection& B, double t) {
  require(t > 0, "Thom form scale must be positive");
  require(B.rank() % 2 == 0, "Thom form needs even rank");
  const int k = B.rank() / 2;
  const double scale = std::pow(2 * M_PI, -k);
  const TotalSpace& ts = total_space(B);
  BundleWithConnection bb = B;
  auto eval = [bb, scale, t](int chart, const Point& p) {
    MQParts mp = parts_total_space(bb, chart, p);
    GradedElement e = exp_nilpotent(mp, t);
    GradedElement top = berezin_integral(e);
    top *= scale * std::exp(-0.5 * t * t * mp.width);
    return top;
  };
  return FormField(ts.atlas, B.rank(), 0, eval);
}

FormField thom_transgression_integrand(const BundleWithConnection& B, double t) {
  const TotalSpace& ts = total_space(B);
  BundleWithConnection bb = B;
  auto eval = [bb, t](int chart, const Point& p) {
    MQParts mp = parts_total_space(bb, chart, p);
    GradedElement v = wedge(mp.front, exp_nilpotent(mp, t));
    GradedElement top = berezin_integral(v);
    top *= std::exp(-0.5 * t * t * mp.width);
    return top;
  };
  return FormField(ts.atlas, B.rank() - 1, 0, eval);
}

FormField section_pullback_thom(const BundleWithConnection& B, const SectionField& v,
                                double t) {
  require(t > 0, "Thom form scale must be positive");
  const int k = B.rank() / 2;
  const double scale = std::pow(2 * M_PI, -k);
  BundleWithConnection bb = B;
  SectionField vv = v;
  auto eval = [bb, vv, scale, t](int chart, const Point& p) {
    MQParts mp = parts_section(bb, vv, chart, p);
    GradedElement e = exp_nilpotent(mp, t);
    GradedElement top = berezin_integral(e);
    top *= scale * std::exp(-0.5 * t * t * mp.width);
    return top;
  };
  return FormField(B.base(), B.rank(), 0, eval);
}

MQElement mq_element(const BundleWithConnection& B, double t, int chart, const Point& p,
                     const SectionField* v) {
  MQParts mp = v ? parts_section(B, *v, chart, p) : parts_total_space(B, chart, p);
  MQElement e;
  e.scalar = 0.5 * t * t * mp.width;
  e.nilpotent = mp.D * (-t);
  e.nilpotent += mp.C;
  return e;
}

TPolynomial collect_t_polynomial(const GradedElement& front, const GradedElement& D,
                                 const GradedElement& C) {
  TPolynomial poly;
  const int p = front.form_dim(), r = front.fiber_rank();
  GradedElement expC = exp_even(C * -1.0);
  GradedElement Dm = GradedElement::scalar(p, r, 1.0); // D^m / m!
  double fact = 1.0;
  const int max_m = (p + r) / 2 + 1;
  for (int m = 0; m <= max_m; ++m) {
    if (m > 0) {
      Dm = wedge(Dm, D);
      fact *= m;
      if (Dm.is_zero(0.0)) break;
    }
    GradedElement coeff = wedge(front, wedge(Dm, expC));
    coeff *= 1.0 / fact;
    coeff.prune(0.0);
    if (!coeff.is_zero(0.0)) poly.terms.push_back({m, coeff});
  }
  // width is |front|^2 (front has pure fiber degree 1)
  double a = 0.0;
  for (auto& [k, val] : front.terms()) a += val * val;
  poly.width = a;
  return poly;
}

double gaussian_moment(int m, double a, double upper) {
  require(m >= 0, "negative moment");
  require(a >= 0, "negative Gaussian width");
  const bool infinite = std::isinf(upper);
  if (infinite) {
    require(a > 0, "gaussian_moment diverges: a = 0 with infinite upper bound");
    if (m == 0) return std::sqrt(M_PI / (2 * a));
    if (m == 1) return 1.0 / a;
    return (m - 1) / a * gaussian_moment(m - 2, a, upper);
  }
  require(upper >= 0, "negative upper bound");
  if (a == 0.0) return std::pow(upper, m + 1) / (m + 1);
  const double g = std::exp(-0.5 * a * upper * upper);
  if (m == 0) return std::sqrt(M_PI / (2 * a)) * std::erf(upper * std::sqrt(0.5 * a));
  if (m == 1) return (1.0 - g) / a;
  return (m - 1) / a * gaussian_moment(m - 2, a, upper) -
         std::pow(upper, m - 1) * g / a;
}

namespace {

// Shared transgression evaluator: a(k) sum_m T(coeff_m) * moment(m, a, upper).
GradedElement transgression_value(const MQParts& mp, int k, double upper) {
  TPolynomial poly = collect_t_polynomial(mp.front, mp.D, mp.C);
  GradedElement acc(mp.p, 0);
  for (auto& [m, coeff] : poly.terms) {
    GradedElement top = berezin_integral(coeff);
    if (top.is_zero(0.0)) continue;
    acc += top * gaussian_moment(m, poly.width, upper);
  }
  acc *= a_const(k);
  return acc;
}

} // namespace

FormField transgression_unit_interval(const BundleWithConnection& B,
                                      const SectionField& v) {
  require(B.base() == v.domain(), "section must live on the bundle base");
  const int k = B.rank() / 2;
  BundleWithConnection bb = B;
  SectionField vv = v;
  auto eval = [bb, vv, k](int chart, const Point& p) {
    MQParts mp = parts_section(bb, vv, chart, p);
    return transgression_value(mp, k, 1.0);
  };
  return FormField(B.base(), B.rank() - 1, 0, eval);
}

FormField transgression_finite(const BundleWithConnection& B, double t_upper) {
  require(t_upper > 0, "upper integration limit must be positive");
  const int k = B.rank() / 2;
  const TotalSpace& ts = total_space(B);
  BundleWithConnection bb = B;
  auto eval = [bb, k, t_upper](int chart, const Point& p) {
    MQParts mp = parts_total_space(bb, chart, p);
    return transgression_value(mp, k, t_upper);
  };
  return FormField(ts.atlas, B.rank() - 1, 0, eval);
}

FormField transgression_infinite(const BundleWithConnection& B) {
  const int k = B.rank() / 2;
  const SphereBundle& sb = sphere_bundle(B);
  BundleWithConnection bb = B;
  auto eval = [bb, k](int chart, const Point& p) {
    MQParts mp = parts_sphere(bb, chart, p);
    // |x| = 1 on SE, so the improper moments converge
    return transgression_value(mp, k, kMomentInfinity);
  };
  return FormField(sb.atlas, B.rank() - 1, 0, eval);
}

BallBundleField compactify_to_ball(const BundleWithConnection& B, const FormField& f) {
  const TotalSpace& ts = total_space(B);
  require(f.domain() == ts.atlas, "field must live on the total space");
  const int n = B.base()->dim();
  const int r = B.rank();
  auto atlas = std::make_shared<Atlas>();
  atlas->name = B.base()->name + "_DE";
  for (const auto& ch : B.base()->charts) {
    Chart bc;
    bc.name = ch.name + "_DE";
    bc.coords = ch.coords;
    bc.lo = ch.lo;
    bc.hi = ch.hi;
    bc.period = ch.period;
    bc.orientation = ch.orientation;
    for (int i = 0; i < r; ++i) {
      bc.coords.push_back("y" + std::to_string(i + 1));
      bc.lo.push_back(-1.0);
      bc.hi.push_back(1.0);
      bc.period.push_back(0.0);
    }
    atlas->charts.push_back(std::move(bc));
  }
  FormField ff = f;
  AtlasPtr ts_atlas = ts.atlas;
  auto eval = [ff, ts_atlas, atlas, n, r](int chart, const Point& p) {
    double s = 0.0;
    for (int i = 0; i < r; ++i) s += p[n + i] * p[n + i];
    require(s < 1.0, "ball-bundle point outside the open unit ball");
    // y -> y / sqrt(1 - |y|^2), base coordinates fixed
    const double den = std::sqrt(1.0 - s);
    Point q = p;
    for (int i = 0; i < r; ++i) q[n + i] = p[n + i] / den;
    GradedElement v = ff(chart, q);
    // Jacobian of the fiberwise map (identity on base block)
    Jacobian J(n + r, std::vector<double>(n + r, 0.0));
    for (int a = 0; a < n; ++a) J[a][a] = 1.0;
    const double den3 = den * den * den;
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) {
        double d = (i == j) ? 1.0 / den : 0.0;
        d += p[n + i] * p[n + j] / den3;
        J[n + i][n + j] = d;
      }
    return pullback_value(v, J, n + r);
  };
  BallBundleField out;
  out.atlas = atlas;
  out.field = FormField(atlas, f.degree(), 0, eval);
  return out;
}

} // namespace gbc
