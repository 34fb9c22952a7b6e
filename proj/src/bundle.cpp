#include "gbc/bundle.hpp"

#include <cmath>
#include <mutex>

namespace gbc {

namespace {

struct ExprConn {
  // [chart][i][j][a] and symbolic partials [chart][i][j][a][b]
  std::vector<std::vector<std::vector<std::vector<Expr>>>> w;
  std::vector<std::vector<std::vector<std::vector<std::vector<Expr>>>>> dw;
};

} // namespace

struct DerivedSpaces {
  std::mutex mu;
  std::optional<TotalSpace> total;
  std::optional<SphereBundle> sphere;
  std::optional<BundleWithConnection> pi_star;
  std::optional<BundleWithConnection> pi_tilde_star;
};

DerivedSpaces& derived_for(const BundleWithConnection& B) {
  require(B.derived_ != nullptr, "bundle was not built through a factory");
  return *B.derived_;
}

// --- BundleWithConnection -------------------------------------------------

BundleWithConnection BundleWithConnection::from_exprs(
    AtlasPtr base, int rank,
    std::vector<std::vector<std::vector<std::vector<Expr>>>> conn,
    std::vector<FrameTransition> frames) {
  require((int)conn.size() == (int)base->charts.size(),
          "connection must be given on every chart");
  const int n = base->dim();
  auto data = std::make_shared<ExprConn>();
  data->w = std::move(conn);
  data->dw.resize(data->w.size());
  for (size_t c = 0; c < data->w.size(); ++c) {
    auto& wc = data->w[c];
    require((int)wc.size() == rank, "connection matrix size != rank");
    data->dw[c].resize(rank);
    for (int i = 0; i < rank; ++i) {
      data->dw[c][i].resize(rank);
      for (int j = 0; j < rank; ++j) {
        require((int)wc[i][j].size() == n, "connection coefficient count != dim");
        data->dw[c][i][j].resize(n);
        for (int a = 0; a < n; ++a) {
          data->dw[c][i][j][a].resize(n);
          for (int b = 0; b < n; ++b)
            data->dw[c][i][j][a][b] = wc[i][j][a].derivative(b);
        }
      }
    }
  }
  BundleWithConnection B;
  B.base_ = std::move(base);
  B.rank_ = rank;
  B.frames_ = std::move(frames);
  B.derived_ = std::make_shared<DerivedSpaces>();
  int r = rank;
  B.jet_ = [data, n, r](int chart, const Point& p) {
    ConnJet jet;
    jet.value.assign(n, std::vector<std::vector<double>>(r, std::vector<double>(r, 0.0)));
    jet.deriv.assign(
        n, std::vector<std::vector<std::vector<double>>>(
               n, std::vector<std::vector<double>>(r, std::vector<double>(r, 0.0))));
    auto& wc = data->w[chart];
    auto& dwc = data->dw[chart];
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j)
        for (int a = 0; a < n; ++a) {
          double v = wc[i][j][a].eval(p);
          jet.value[a][i][j] = v;
          for (int b = 0; b < n; ++b) jet.deriv[b][a][i][j] = dwc[i][j][a][b].eval(p);
        }
    return jet;
  };
  return B;
}

AntisymmetricFormMatrix BundleWithConnection::curvature(int chart, const Point& p) const {
  const auto& ch = base_->charts[chart];
  require(ch.contains(p), "curvature point outside chart box");
  const int n = ch.dim();
  const int r = rank_;
  ConnJet jet = jet_(chart, p);
  auto R = AntisymmetricFormMatrix::zero(r, n, 0);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      GradedElement Rij(n, 0);
      for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
          double c = jet.deriv[a][b][i][j] - jet.deriv[b][a][i][j];
          for (int l = 0; l < r; ++l)
            c += jet.value[a][i][l] * jet.value[b][l][j] -
                 jet.value[b][i][l] * jet.value[a][l][j];
          Rij.add_coeff((1u << a) | (1u << b), 0, c);
        }
      R.entry[i][j] = Rij;
    }
  return R;
}

BundleWithConnection pullback_bundle(const BundleWithConnection& B, AtlasPtr src,
                                     const std::vector<SmoothMap>& chart_maps) {
  require(chart_maps.size() == src->charts.size(),
          "need one map per source chart");
  const int r = B.rank();
  const int m = src->dim();
  auto maps = std::make_shared<std::vector<SmoothMap>>(chart_maps);
  auto base_jet = B.jet_;
  BundleWithConnection P;
  P.base_ = src;
  P.rank_ = r;
  P.derived_ = std::make_shared<DerivedSpaces>();
  P.jet_ = [maps, base_jet, r, m](int chart, const Point& p) {
    const SmoothMap& f = (*maps)[chart];
    require(f.source_chart() == chart || f.source_chart() < 0,
            "pullback map not defined on this chart");
    const int n = f.target_dim();
    Point q = f(p);
    ConnJet up = base_jet(f.target_chart(), q);
    Jacobian J = f.jacobian(p);
    // second derivatives d_c J[b][a] by central differences of the Jacobian
    // (exact symbolic Jacobians make this 2nd-order accurate on smooth maps)
    const double h = 1e-5;
    std::vector<Jacobian> dJ(m);
    for (int c = 0; c < m; ++c) {
      Point pp = p, pm = p;
      pp[c] += h;
      pm[c] -= h;
      Jacobian Jp = f.jacobian(pp), Jm = f.jacobian(pm);
      dJ[c].assign(n, std::vector<double>(m, 0.0));
      for (int b = 0; b < n; ++b)
        for (int a = 0; a < m; ++a) dJ[c][b][a] = (Jp[b][a] - Jm[b][a]) / (2 * h);
    }
    ConnJet jet;
    jet.value.assign(m, std::vector<std::vector<double>>(r, std::vector<double>(r, 0.0)));
    jet.deriv.assign(
        m, std::vector<std::vector<std::vector<double>>>(
               m, std::vector<std::vector<double>>(r, std::vector<double>(r, 0.0))));
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) {
        for (int a = 0; a < m; ++a) {
          double v = 0.0;
          for (int b = 0; b < n; ++b) v += up.value[b][i][j] * J[b][a];
          jet.value[a][i][j] = v;
        }
        for (int c = 0; c < m; ++c)
          for (int a = 0; a < m; ++a) {
            double v = 0.0;
            for (int b = 0; b < n; ++b) {
              double dv = 0.0; // d_c of (omega_b o f)
              for (int d = 0; d < n; ++d) dv += up.deriv[d][b][i][j] * J[d][c];
              v += dv * J[b][a] + up.value[b][i][j] * dJ[c][b][a];
            }
            jet.deriv[c][a][i][j] = v;
          }
      }
    return jet;
  };
  return P;
}

// --- sections ---------------------------------------------------------------

SectionField SectionField::from_exprs(AtlasPtr domain, int rank,
                                      std::vector<std::vector<Expr>> components) {
  require(components.size() == domain->charts.size(),
          "section components must be given on every chart");
  const int n = domain->dim();
  auto data = std::make_shared<std::vector<std::vector<Expr>>>(std::move(components));
  auto deriv = std::make_shared<std::vector<std::vector<std::vector<Expr>>>>();
  deriv->resize(data->size());
  for (size_t c = 0; c < data->size(); ++c) {
    require((int)(*data)[c].size() == rank, "component count != rank");
    (*deriv)[c].resize(rank);
    for (int i = 0; i < rank; ++i) {
      (*deriv)[c][i].resize(n);
      for (int a = 0; a < n; ++a) (*deriv)[c][i][a] = (*data)[c][i].derivative(a);
    }
  }
  SectionField s;
  s.domain_ = std::move(domain);
  s.rank_ = rank;
  s.jet_ = [data, deriv, rank, n](int chart, const Point& p) {
    SecJet jet;
    jet.value.resize(rank);
    jet.deriv.assign(n, std::vector<double>(rank, 0.0));
    for (int i = 0; i < rank; ++i) {
      jet.value[i] = (*data)[chart][i].eval(p);
      for (int a = 0; a < n; ++a) jet.deriv[a][i] = (*deriv)[chart][i][a].eval(p);
    }
    return jet;
  };
  return s;
}

double SectionField::norm2(int chart, const Point& p) const {
  auto v = jet_(chart, p).value;
  double s = 0.0;
  for (double x : v) s += x * x;
  return s;
}

SectionField SectionField::scaled(double s) const {
  SectionField out = *this;
  auto j = jet_;
  out.jet_ = [j, s](int chart, const Point& p) {
    SecJet jet = j(chart, p);
    for (auto& v : jet.value) v *= s;
    for (auto& row : jet.deriv)
      for (auto& v : row) v *= s;
    return jet;
  };
  return out;
}

GradedElement covariant_derivative(const BundleWithConnection& B, const SectionField& s,
                                   int chart, const Point& p) {
  require(B.base() == s.domain(), "section does not live on the bundle's base");
  const int n = B.base()->dim();
  const int r = B.rank();
  ConnJet cj = B.connection_jet(chart, p);
  SecJet sj = s.jet(chart, p);
  GradedElement out(n, r);
  for (int i = 0; i < r; ++i)
    for (int a = 0; a < n; ++a) {
      double c = sj.deriv[a][i];
      for (int j = 0; j < r; ++j) c += cj.value[a][i][j] * sj.value[j];
      out.add_coeff(1u << a, 1u << i, c);
    }
  return out;
}

// --- derived spaces ---------------------------------------------------------

const TotalSpace& total_space(const BundleWithConnection& B) {
  DerivedSpaces& d = derived_for(B);
  std::lock_guard<std::mutex> lock(d.mu);
  if (!d.total) {
    const int n = B.base()->dim();
    const int r = B.rank();
    const double cap = 6.0, slack = 0.5;
    auto atlas = std::make_shared<Atlas>();
    atlas->name = B.base()->name + "_E";
    for (const auto& ch : B.base()->charts) {
      Chart tc;
      tc.name = ch.name + "_E";
      tc.coords = ch.coords;
      tc.lo = ch.lo;
      tc.hi = ch.hi;
      tc.period = ch.period;
      tc.orientation = ch.orientation;
      for (int i = 0; i < r; ++i) {
        tc.coords.push_back("x" + std::to_string(i + 1));
        tc.lo.push_back(-cap - slack);
        tc.hi.push_back(cap + slack);
        tc.period.push_back(0.0);
      }
      atlas->charts.push_back(std::move(tc));
    }
    TotalSpace ts;
    ts.atlas = atlas;
    ts.radius_cap = cap;
    for (size_t c = 0; c < B.base()->charts.size(); ++c) {
      std::vector<Expr> proj;
      const auto& coords = atlas->charts[c].coords;
      for (int a = 0; a < n; ++a) {
        Expr e = Expr::parse(coords[a], coords);
        proj.push_back(e);
      }
      ts.projection.push_back(
          SmoothMap::from_exprs(atlas, (int)c, B.base(), (int)c, proj));
      std::vector<Expr> zs;
      const auto& bcoords = B.base()->charts[c].coords;
      for (int a = 0; a < n; ++a) zs.push_back(Expr::parse(bcoords[a], bcoords));
      for (int i = 0; i < r; ++i) zs.push_back(Expr::number(0));
      ts.zero_section.push_back(
          SmoothMap::from_exprs(B.base(), (int)c, atlas, (int)c, zs));
    }
    d.total = std::move(ts);
  }
  return *d.total;
}

const SphereBundle& sphere_bundle(const BundleWithConnection& B) {
  require(B.rank() >= 2, "sphere bundle needs rank >= 2");
  require(B.rank() == 2,
          "sphere-bundle charts are provided for rank 2 only (fiber angle psi)");
  DerivedSpaces& d = derived_for(B);
  const TotalSpace& ts = total_space(B); // ensure built (locks internally)
  std::lock_guard<std::mutex> lock(d.mu);
  if (!d.sphere) {
    const int n = B.base()->dim();
    auto atlas = std::make_shared<Atlas>();
    atlas->name = B.base()->name + "_SE";
    for (const auto& ch : B.base()->charts) {
      Chart sc;
      sc.name = ch.name + "_SE";
      sc.coords = ch.coords;
      sc.lo = ch.lo;
      sc.hi = ch.hi;
      sc.period = ch.period;
      sc.orientation = ch.orientation;
      sc.coords.push_back("psi");
      sc.lo.push_back(-8 * M_PI);
      sc.hi.push_back(8 * M_PI);
      sc.period.push_back(2 * M_PI);
      atlas->charts.push_back(std::move(sc));
    }
    SphereBundle sb;
    sb.atlas = atlas;
    for (size_t c = 0; c < B.base()->charts.size(); ++c) {
      const auto& coords = atlas->charts[c].coords;
      std::vector<Expr> proj;
      for (int a = 0; a < n; ++a) proj.push_back(Expr::parse(coords[a], coords));
      sb.projection.push_back(
          SmoothMap::from_exprs(atlas, (int)c, B.base(), (int)c, proj));
      std::vector<Expr> inc;
      for (int a = 0; a < n; ++a) inc.push_back(Expr::parse(coords[a], coords));
      inc.push_back(Expr::parse("cos(psi)", coords));
      inc.push_back(Expr::parse("-sin(psi)", coords));
      sb.inclusion.push_back(
          SmoothMap::from_exprs(atlas, (int)c, ts.atlas, (int)c, inc));
    }
    d.sphere = std::move(sb);
  }
  return *d.sphere;
}

const BundleWithConnection& pulled_back_to_total_space(const BundleWithConnection& B) {
  DerivedSpaces& d = derived_for(B);
  const TotalSpace& ts = total_space(B);
  std::lock_guard<std::mutex> lock(d.mu);
  if (!d.pi_star) d.pi_star = pullback_bundle(B, ts.atlas, ts.projection);
  return *d.pi_star;
}

const BundleWithConnection& pulled_back_to_sphere_bundle(const BundleWithConnection& B) {
  DerivedSpaces& d = derived_for(B);
  const SphereBundle& sb = sphere_bundle(B);
  std::lock_guard<std::mutex> lock(d.mu);
  if (!d.pi_tilde_star) d.pi_tilde_star = pullback_bundle(B, sb.atlas, sb.projection);
  return *d.pi_tilde_star;
}

SectionField tautological_section(const BundleWithConnection& B) {
  const TotalSpace& ts = total_space(B);
  const int n = B.base()->dim();
  const int r = B.rank();
  std::vector<std::vector<Expr>> comps(ts.atlas->charts.size());
  for (size_t c = 0; c < ts.atlas->charts.size(); ++c) {
    const auto& coords = ts.atlas->charts[c].coords;
    for (int i = 0; i < r; ++i)
      comps[c].push_back(Expr::parse(coords[n + i], coords));
  }
  return SectionField::from_exprs(ts.atlas, r, comps);
}

SectionField tautological_section_on_sphere(const BundleWithConnection& B) {
  const SphereBundle& sb = sphere_bundle(B);
  std::vector<std::vector<Expr>> comps(sb.atlas->charts.size());
  for (size_t c = 0; c < sb.atlas->charts.size(); ++c) {
    const auto& coords = sb.atlas->charts[c].coords;
    comps[c].push_back(Expr::parse("cos(psi)", coords));
    comps[c].push_back(Expr::parse("-sin(psi)", coords));
  }
  return SectionField::from_exprs(sb.atlas, 2, comps);
}

} // namespace gbc
