#include "gbc/diff_char.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace gbc {

DifferentialCharacter i2(const FormField& omega, double modulus, int order) {
  DifferentialCharacter ch;
  ch.degree = omega.degree() + 1;
  ch.modulus = modulus;
  ch.curvature = exterior_derivative_field(omega);
  FormField w = omega;
  ch.eval = [w, modulus, order](const Chain& z) {
    if (z.empty()) return mod_reduce(0.0, modulus);
    return mod_reduce(integrate(w, z, order), modulus);
  };
  return ch;
}

std::vector<FormField> closed_test_forms(AtlasPtr atlas, int count, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  std::vector<FormField> out;
  const int n = atlas->dim();

  // Exact forms d(H) for random quadratics H in the embedding coordinates.
  const int embed_dim = atlas->charts[0].embedding.empty()
                            ? 0
                            : (int)atlas->charts[0].embedding.size();
  int exact_count = count;
  // angle forms generate H^1 for tori/circles: charts with a periodic axis
  std::vector<std::vector<std::pair<uint32_t, Expr>>> angle_coeffs;
  if (!atlas->charts.empty()) {
    const Chart& c0 = atlas->charts[0];
    for (int a = 0; a < n; ++a) {
      if (c0.period[a] == 0.0) continue;
      bool all = true;
      for (auto& ch : atlas->charts) all = all && ch.period[a] != 0.0;
      if (!all || atlas->charts.size() > 1) continue; // single-chart tori only
      std::vector<std::vector<std::pair<uint32_t, Expr>>> coeffs(atlas->charts.size());
      coeffs[0].push_back({1u << a, Expr::number(1.0)});
      out.push_back(FormField::from_exprs(atlas, 1, coeffs));
      --exact_count;
    }
  }

  for (int t = 0; t < exact_count; ++t) {
    std::vector<std::vector<std::pair<uint32_t, Expr>>> coeffs(atlas->charts.size());
    if (embed_dim == 0) {
      // no embedding: random linear H in chart coordinates (single-chart atlases)
      for (size_t c = 0; c < atlas->charts.size(); ++c)
        for (int a = 0; a < n; ++a)
          coeffs[c].push_back({1u << a, Expr::number(U(rng))});
      out.push_back(FormField::from_exprs(atlas, 1, coeffs));
      continue;
    }
    // H = sum l_i X_i + sum q_ij X_i X_j over embedding components
    std::vector<double> lin(embed_dim);
    std::vector<std::vector<double>> quad(embed_dim, std::vector<double>(embed_dim));
    for (auto& v : lin) v = U(rng);
    for (auto& row : quad)
      for (auto& v : row) v = U(rng);
    for (size_t c = 0; c < atlas->charts.size(); ++c) {
      const auto& emb = atlas->charts[c].embedding;
      Expr H = Expr::number(0.0);
      for (int i = 0; i < embed_dim; ++i) {
        H = H + Expr::number(lin[i]) * emb[i];
        for (int j = 0; j < embed_dim; ++j)
          H = H + Expr::number(quad[i][j]) * emb[i] * emb[j];
      }
      for (int a = 0; a < n; ++a)
        coeffs[c].push_back({1u << a, H.derivative(a)});
    }
    out.push_back(FormField::from_exprs(atlas, 1, coeffs));
  }
  return out;
}

double cycle_residual(const Chain& z, const std::vector<FormField>& tests, int order) {
  if (z.dim() == 0 || z.empty()) return 0.0;
  Chain b = z.boundary();
  if (b.empty()) return 0.0;
  if (b.dim() == 0) {
    // signed endpoint masses must cancel geometrically (embedding space)
    std::vector<std::pair<Point, int>> pts;
    for (auto& [cell, k] : b.cells()) {
      const Chart& ch = cell.atlas()->charts[cell.chart()];
      pts.push_back({ch.embed(cell(Point{})), k});
    }
    double worst = 0.0;
    std::vector<bool> used(pts.size(), false);
    for (size_t i = 0; i < pts.size(); ++i) {
      if (used[i]) continue;
      int net = pts[i].second;
      for (size_t j = i + 1; j < pts.size(); ++j) {
        if (used[j]) continue;
        double d2 = 0.0;
        for (size_t a = 0; a < pts[i].first.size(); ++a)
          d2 += (pts[i].first[a] - pts[j].first[a]) * (pts[i].first[a] - pts[j].first[a]);
        if (std::sqrt(d2) < 1e-9) {
          net += pts[j].second;
          used[j] = true;
        }
      }
      used[i] = true;
      worst = std::max(worst, (double)std::abs(net));
    }
    return worst;
  }
  // higher-dimensional boundaries: integrate the battery over the boundary
  double worst = 0.0;
  for (const auto& f : tests)
    if (f.degree() == b.dim()) worst = std::max(worst, std::abs(integrate(f, b, order)));
  return worst;
}

double sphere_decomposition_residual(const BundleWithConnection& B, const Chain& z,
                                     const SphereDecomposition& dec,
                                     const std::vector<FormField>& tests, int order) {
  const SphereBundle& sb = sphere_bundle(B);
  Chain pushed(z.dim());
  if (!dec.y.empty()) {
    // push each SE cell down chartwise
    for (auto& [cell, k] : dec.y.cells()) {
      pushed.add(cell.composed_with(sb.projection[cell.chart()]), k);
    }
  }
  double worst = 0.0;
  for (const auto& f : tests) {
    double r = integrate(f, z, order);
    if (!pushed.empty()) r -= integrate(f, pushed, order);
    if (!dec.w.empty()) {
      Chain bw = dec.w.boundary();
      if (!bw.empty()) r -= integrate(f, bw, order);
    }
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

ModValue euler_character_eval(const BundleWithConnection& B,
                              const SphereDecomposition& dec, int order) {
  double v = 0.0;
  if (!dec.y.empty()) v += integrate(transgression_infinite(B), dec.y, order);
  if (!dec.w.empty()) v += integrate(euler_form(B), dec.w, order);
  return mod_reduce(v, 1.0);
}

namespace {

FormField pullback_to_sphere(const BundleWithConnection& B, const FormField& base_field) {
  const SphereBundle& sb = sphere_bundle(B);
  FormField f = base_field;
  auto proj = sb.projection;
  auto eval = [f, proj](int chart, const Point& p) {
    const SmoothMap& m = proj[chart];
    Point q = m(p);
    GradedElement v = f(chart, q);
    Jacobian J = m.jacobian(p);
    return pullback_value(v, J, (int)p.size());
  };
  return FormField(sb.atlas, base_field.degree(), 0, eval);
}

} // namespace

ModValue thom_pullback_character_eval(const BundleWithConnection& B,
                                      const SectionField& v,
                                      const SphereDecomposition& dec, int order) {
  double val = 0.0;
  if (!dec.y.empty()) {
    FormField q = transgression_infinite(B);
    FormField theta = transgression_unit_interval(B, v);
    FormField y_integrand = q - pullback_to_sphere(B, theta);
    val += integrate(y_integrand, dec.y, order);
  }
  if (!dec.w.empty()) val += integrate(section_pullback_thom(B, v), dec.w, order);
  return mod_reduce(val, 1.0);
}

ModValue rhs_eval(const BundleWithConnection& B, const SectionField& v, const Chain& z,
                  int order) {
  require(cycle_residual(z, {}, order) < 1e-5, "rhs_eval input is not a cycle");
  FormField theta = transgression_unit_interval(B, v);
  return mod_reduce(z.empty() ? 0.0 : integrate(theta, z, order), 1.0);
}

GbcReport verify_gbc_identity(const BundleWithConnection& B, const SectionField& v,
                              const std::vector<GbcCase>& cases, double tolerance,
                              int order) {
  GbcReport report;
  report.tolerance = tolerance;
  auto tests = closed_test_forms(B.base());
  for (const auto& cs : cases) {
    GbcCaseResult res;
    res.cycle_id = cs.cycle_id;
    require(!cs.decompositions.empty(), "case needs at least one decomposition");
    res.witness_residual = cycle_residual(cs.z, tests, order);
    ModValue rhs = rhs_eval(B, v, cs.z, order);
    res.rhs = rhs.rep;
    std::vector<double> diffs;
    for (const auto& dec : cs.decompositions) {
      res.witness_residual =
          std::max(res.witness_residual,
                   sphere_decomposition_residual(B, cs.z, dec, tests, order));
      ModValue e = euler_character_eval(B, dec, order);
      ModValue t = thom_pullback_character_eval(B, v, dec, order);
      diffs.push_back(mod_reduce(e.rep - t.rep, 1.0).rep);
      if (diffs.size() == 1) {
        res.lhs_euler = e.rep;
        res.lhs_thom = t.rep;
      }
    }
    res.residual = mod_distance(mod_reduce(diffs[0], 1.0), rhs);
    for (size_t i = 1; i < diffs.size(); ++i) {
      res.residual = std::max(res.residual,
                              mod_distance(mod_reduce(diffs[i], 1.0), rhs));
      res.decomposition_spread =
          std::max(res.decomposition_spread,
                   mod_distance(mod_reduce(diffs[i], 1.0), mod_reduce(diffs[0], 1.0)));
    }
    res.pass = res.residual < tolerance && res.decomposition_spread < tolerance;
    report.pass = report.pass && res.pass;
    report.cases.push_back(std::move(res));
  }
  return report;
}

Chain lift_by_section(const BundleWithConnection& B, const Chain& z,
                      const SectionField& s) {
  require(z.dim() == 1, "only 1-cycles are lifted");
  const SphereBundle& sb = sphere_bundle(B);
  Chain lifted(1);
  for (auto& [cell, k] : z.cells()) {
    const int chart = cell.chart();
    // dense table of unwrapped angles along the cell
    const int N = 4096;
    auto angles = std::make_shared<std::vector<double>>(N + 1);
    SectionField ss = s;
    ParamSimplex base_cell = cell;
    double prev = 0.0;
    for (int i = 0; i <= N; ++i) {
      Point u{(double)i / N};
      Point x = base_cell(u);
      auto val = ss.value(chart, x);
      double n2 = 0.0;
      for (double c : val) n2 += c * c;
      require(n2 > 1e-12, "section vanishes on the lifted cycle");
      // fiber parametrization x(psi) = (cos psi, -sin psi)
      double raw = std::atan2(-val[1], val[0]);
      if (i == 0) {
        (*angles)[0] = raw;
      } else {
        double d = raw - prev;
        while (d > M_PI) d -= 2 * M_PI;
        while (d < -M_PI) d += 2 * M_PI;
        (*angles)[i] = (*angles)[i - 1] + d;
      }
      prev = raw;
    }
    auto fn = [base_cell, ss, chart, angles, N](const Point& u) {
      Point x = base_cell(u);
      auto val = ss.value(chart, x);
      double raw = std::atan2(-val[1], val[0]);
      // continue the branch from the nearest table anchor
      double t = std::clamp(u[0], 0.0, 1.0);
      double anchor = (*angles)[(int)std::lround(t * N)];
      double psi = raw + 2 * M_PI * std::round((anchor - raw) / (2 * M_PI));
      Point out = x;
      out.push_back(psi);
      return out;
    };
    lifted.add(ParamSimplex::from_function(sb.atlas, chart, 1,
                                           cell.map().target_dim() + 1, fn),
               k);
  }
  return lifted;
}

double section_winding(const SectionField& s, const ParamSimplex& loop, int samples) {
  const int chart = loop.chart();
  double total = 0.0;
  double prev = 0.0;
  for (int i = 0; i <= samples; ++i) {
    Point u{(double)i / samples};
    auto val = s.value(chart, loop(u));
    double raw = std::atan2(val[1], val[0]); // counterclockwise convention
    if (i > 0) {
      double d = raw - prev;
      while (d > M_PI) d -= 2 * M_PI;
      while (d < -M_PI) d += 2 * M_PI;
      total += d;
    }
    prev = raw;
  }
  return total / (2 * M_PI);
}

double holonomy_angle(const BundleWithConnection& B, const ParamSimplex& loop,
                      int steps) {
  require(B.rank() == 2, "holonomy oracle is rank-2");
  const int chart = loop.chart();
  // u' = -omega(c') u reduces to angle' = omega_12(c') in so(2):
  // transporting u with u = R(a) u0 gives a'(t) = +omega_12(c'(t)).
  double angle = 0.0;
  auto omega_along = [&](double t) {
    Point u{t};
    Point x = loop(u);
    Jacobian J = loop.jacobian(u);
    ConnJet jet = B.connection_jet(chart, x);
    double w = 0.0;
    for (size_t a = 0; a < x.size(); ++a) w += jet.value[a][0][1] * J[a][0];
    return w;
  };
  const double h = 1.0 / steps;
  for (int i = 0; i < steps; ++i) {
    double t = i * h;
    double k1 = omega_along(t);
    double k2 = omega_along(t + 0.5 * h);
    double k4 = omega_along(t + h);
    angle += h / 6.0 * (k1 + 4 * k2 + k4);
  }
  return angle;
}

} // namespace gbc
