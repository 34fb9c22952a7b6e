#include "gbc/fixtures.hpp"

#include <bit>
#include <fstream>
#include <sstream>

namespace gbc {

const AtlasPtr& FixtureSet::atlas(const std::string& n) const {
  auto it = atlases.find(n);
  require(it != atlases.end(), "unknown atlas fixture '" + n + "'");
  return it->second;
}
const BundleWithConnection& FixtureSet::bundle(const std::string& n) const {
  auto it = bundles.find(n);
  require(it != bundles.end(), "unknown bundle fixture '" + n + "'");
  return it->second;
}
const SectionField& FixtureSet::section(const std::string& n) const {
  auto it = sections.find(n);
  require(it != sections.end(), "unknown section fixture '" + n + "'");
  return it->second.section;
}
const Chain& FixtureSet::chain(const std::string& n) const {
  auto it = chains.find(n);
  require(it != chains.end(), "unknown chain fixture '" + n + "'");
  return it->second;
}
const FormField& FixtureSet::form(const std::string& n) const {
  auto it = forms.find(n);
  require(it != forms.end(), "unknown form fixture '" + n + "'");
  return it->second;
}
const AkPair& FixtureSet::pair(const std::string& n) const {
  auto it = pairs.find(n);
  require(it != pairs.end(), "unknown pair fixture '" + n + "'");
  return it->second;
}

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

// split "head : tail" at the first top-level colon
bool split_colon(const std::string& line, std::string& head, std::string& tail) {
  auto pos = line.find(':');
  if (pos == std::string::npos) return false;
  head = line.substr(0, pos);
  tail = line.substr(pos + 1);
  return true;
}

struct PendingAtlas {
  std::string name;
  Atlas atlas;
  int cur_chart = -1;
  int cur_transition = -1;
};

struct PendingBundle {
  std::string name, atlas;
  int rank = 0;
  // [chart][i][j][axis]
  std::vector<std::vector<std::vector<std::vector<Expr>>>> conn;
  std::vector<FrameTransition> frames;
  bool frames_given = false;
};

struct PendingSection {
  std::string name, bundle;
  std::vector<std::vector<Expr>> comps;
  std::vector<bool> given;
};

struct PendingPair {
  std::string name, atlas;
  int degree = 0;
  double modulus = 1.0, clearance = 1e-3;
  std::vector<std::vector<std::pair<uint32_t, Expr>>> omega, phi;
  std::vector<ParamSimplex> sing_omega, sing_phi;
};

struct ParserState {
  FixtureSet set;
  std::map<std::string, double> params;
  std::optional<PendingAtlas> atlas;
  std::optional<PendingBundle> bundle;
  std::optional<PendingSection> section;
  std::optional<PendingPair> pair;
  std::string cur_chain;
  std::string cur_form;
  int form_degree = 0;
  std::vector<std::vector<std::pair<uint32_t, Expr>>> form_coeffs;
  std::string form_atlas;

  double num(const std::string& text) { return Expr::parse(text, {}, params).eval({}); }

  void flush_atlas() {
    if (!atlas) return;
    auto a = std::make_shared<Atlas>(std::move(atlas->atlas));
    a->name = atlas->name;
    set.atlases[atlas->name] = a;
    atlas.reset();
  }
  void flush_bundle() {
    if (!bundle) return;
    AtlasPtr base = set.atlas(bundle->atlas);
    // default frames: identity on every declared transition
    if (!bundle->frames_given) {
      bundle->frames.clear();
      for (size_t t = 0; t < base->transitions.size(); ++t) {
        FrameTransition ft;
        ft.g.assign(bundle->rank, std::vector<Expr>(bundle->rank, Expr::number(0)));
        for (int i = 0; i < bundle->rank; ++i) ft.g[i][i] = Expr::number(1);
        bundle->frames.push_back(std::move(ft));
      }
    }
    set.bundles[bundle->name] = BundleWithConnection::from_exprs(
        base, bundle->rank, std::move(bundle->conn), std::move(bundle->frames));
    bundle.reset();
  }
  void flush_section() {
    if (!section) return;
    const auto& B = set.bundle(section->bundle);
    for (size_t c = 0; c < section->given.size(); ++c)
      require(section->given[c], "section '" + section->name +
                                     "' missing components on chart " +
                                     B.base()->charts[c].name);
    set.sections[section->name] = {
        section->bundle,
        SectionField::from_exprs(B.base(), B.rank(), std::move(section->comps))};
    section.reset();
  }
  void flush_pair() {
    if (!pair) return;
    AtlasPtr a = set.atlas(pair->atlas);
    AkPair p;
    p.degree = pair->degree;
    p.modulus = pair->modulus;
    p.clearance = pair->clearance;
    p.omega = FormField::from_exprs(a, pair->degree, std::move(pair->omega));
    p.phi = FormField::from_exprs(a, pair->degree - 1, std::move(pair->phi));
    p.e_omega = SingularSet(std::move(pair->sing_omega));
    p.e_phi = SingularSet(std::move(pair->sing_phi));
    set.pairs[pair->name] = std::move(p);
    pair.reset();
  }
  void flush_form() {
    if (cur_form.empty()) return;
    set.forms[cur_form] =
        FormField::from_exprs(set.atlas(form_atlas), form_degree, std::move(form_coeffs));
    cur_form.clear();
  }
  void flush_all() {
    flush_atlas();
    flush_bundle();
    flush_section();
    flush_pair();
    flush_form();
    cur_chain.clear();
  }
};

uint32_t axes_mask(const Chart& chart, const std::vector<std::string>& names,
                   size_t first, size_t count) {
  uint32_t mask = 0;
  for (size_t i = first; i < first + count; ++i) {
    bool found = false;
    for (int a = 0; a < chart.dim(); ++a)
      if (chart.coords[a] == names[i]) {
        mask |= (1u << a);
        found = true;
      }
    require(found, "unknown coordinate '" + names[i] + "' on chart " + chart.name);
  }
  return mask;
}

} // namespace

FixtureSet load_fixtures(const std::string& text, const ParamMap& overrides) {
  ParserState st;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw = raw.substr(0, hash);
    std::string head = raw, tail;
    bool has_tail = split_colon(raw, head, tail);
    auto tok = tokenize(head);
    if (tok.empty()) continue;
    try {
      const std::string& kw = tok[0];
      if (kw == "param") {
        require(tok.size() == 3, "param <name> <value>");
        double v = st.num(tok[2]);
        if (auto it = overrides.find(tok[1]); it != overrides.end()) v = it->second;
        st.params[tok[1]] = v;
      } else if (kw == "atlas") {
        st.flush_all();
        st.atlas = PendingAtlas{};
        st.atlas->name = tok[1];
      } else if (kw == "chart") {
        require(st.atlas.has_value(), "chart outside atlas block");
        Chart c;
        c.name = tok[1];
        st.atlas->atlas.charts.push_back(c);
        st.atlas->cur_chart = (int)st.atlas->atlas.charts.size() - 1;
        st.atlas->cur_transition = -1;
      } else if (kw == "coords") {
        auto& c = st.atlas->atlas.charts[st.atlas->cur_chart];
        for (size_t i = 1; i < tok.size(); ++i) c.coords.push_back(tok[i]);
        c.lo.assign(c.dim(), -1.0);
        c.hi.assign(c.dim(), 1.0);
        c.period.assign(c.dim(), 0.0);
      } else if (kw == "box") {
        auto& c = st.atlas->atlas.charts[st.atlas->cur_chart];
        uint32_t m = axes_mask(c, tok, 1, 1);
        int a = std::countr_zero(m);
        c.lo[a] = st.num(tok[2]);
        c.hi[a] = st.num(tok[3]);
      } else if (kw == "periodic") {
        auto& c = st.atlas->atlas.charts[st.atlas->cur_chart];
        uint32_t m = axes_mask(c, tok, 1, 1);
        c.period[std::countr_zero(m)] = st.num(tok[2]);
      } else if (kw == "orientation") {
        auto& c = st.atlas->atlas.charts[st.atlas->cur_chart];
        c.orientation = (int)st.num(tok[1]);
      } else if (kw == "embed") {
        auto& c = st.atlas->atlas.charts[st.atlas->cur_chart];
        std::string rest = head.substr(head.find("embed") + 5);
        c.embedding = parse_expr_list(rest, c.coords, st.params);
      } else if (kw == "transition") {
        require(st.atlas.has_value(), "transition outside atlas block");
        AtlasTransition t;
        t.from_chart = st.atlas->atlas.chart_index(tok[1]);
        t.to_chart = st.atlas->atlas.chart_index(tok[2]);
        const Chart& fc = st.atlas->atlas.charts[t.from_chart];
        t.sample_lo = fc.lo;
        t.sample_hi = fc.hi;
        st.atlas->atlas.transitions.push_back(std::move(t));
        st.atlas->cur_transition = (int)st.atlas->atlas.transitions.size() - 1;
        st.atlas->cur_chart = -1;
      } else if (kw == "map") {
        auto& t = st.atlas->atlas.transitions[st.atlas->cur_transition];
        const Chart& fc = st.atlas->atlas.charts[t.from_chart];
        std::string rest = head.substr(head.find("map") + 3);
        t.map = parse_expr_list(rest, fc.coords, st.params);
      } else if (kw == "sample") {
        auto& t = st.atlas->atlas.transitions[st.atlas->cur_transition];
        const Chart& fc = st.atlas->atlas.charts[t.from_chart];
        uint32_t m = axes_mask(fc, tok, 1, 1);
        int a = std::countr_zero(m);
        t.sample_lo[a] = st.num(tok[2]);
        t.sample_hi[a] = st.num(tok[3]);
      } else if (kw == "bundle") {
        st.flush_all();
        require(tok.size() >= 4 && tok[2] == "on", "bundle <name> on <atlas>");
        st.bundle = PendingBundle{};
        st.bundle->name = tok[1];
        st.bundle->atlas = tok[3];
      } else if (kw == "rank") {
        require(st.bundle.has_value(), "rank outside bundle block");
        st.bundle->rank = (int)st.num(tok[1]);
        AtlasPtr base = st.set.atlas(st.bundle->atlas);
        const int n = base->dim(), r = st.bundle->rank;
        st.bundle->conn.assign(
            base->charts.size(),
            std::vector<std::vector<std::vector<Expr>>>(
                r, std::vector<std::vector<Expr>>(
                       r, std::vector<Expr>(n, Expr::number(0)))));
      } else if (kw == "omega" && st.bundle.has_value()) {
        require(has_tail, "omega <chart> <i> <j> : <coeff per axis>");
        AtlasPtr base = st.set.atlas(st.bundle->atlas);
        int chart = base->chart_index(tok[1]);
        int i = (int)st.num(tok[2]) - 1, j = (int)st.num(tok[3]) - 1;
        auto coeffs = parse_expr_list(tail, base->charts[chart].coords, st.params);
        require((int)coeffs.size() == base->dim(), "one omega coefficient per axis");
        st.bundle->conn[chart][i][j] = coeffs;
        for (auto& e : coeffs) e = -e;
        st.bundle->conn[chart][j][i] = coeffs;
      } else if (kw == "frame") {
        require(st.bundle.has_value() && has_tail, "frame <from> <to> : <r*r entries>");
        AtlasPtr base = st.set.atlas(st.bundle->atlas);
        int from = base->chart_index(tok[1]), to = base->chart_index(tok[2]);
        int tr = -1;
        for (size_t t = 0; t < base->transitions.size(); ++t)
          if (base->transitions[t].from_chart == from &&
              base->transitions[t].to_chart == to)
            tr = (int)t;
        require(tr >= 0, "frame references an undeclared transition");
        auto entries =
            parse_expr_list(tail, base->charts[from].coords, st.params);
        const int r = st.bundle->rank;
        require((int)entries.size() == r * r, "frame needs r*r entries");
        if (!st.bundle->frames_given) {
          st.bundle->frames.assign(base->transitions.size(), FrameTransition{});
          for (auto& f : st.bundle->frames) {
            f.g.assign(r, std::vector<Expr>(r, Expr::number(0)));
            for (int i = 0; i < r; ++i) f.g[i][i] = Expr::number(1);
          }
          st.bundle->frames_given = true;
        }
        for (int i = 0; i < r; ++i)
          for (int j = 0; j < r; ++j)
            st.bundle->frames[tr].g[i][j] = entries[i * r + j];
      } else if (kw == "section") {
        st.flush_all();
        require(tok.size() >= 4 && tok[2] == "of", "section <name> of <bundle>");
        st.section = PendingSection{};
        st.section->name = tok[1];
        st.section->bundle = tok[3];
        const auto& B = st.set.bundle(tok[3]);
        st.section->comps.assign(B.base()->charts.size(), {});
        st.section->given.assign(B.base()->charts.size(), false);
      } else if (kw == "on" && st.section.has_value()) {
        require(has_tail, "on <chart> : <components>");
        const auto& B = st.set.bundle(st.section->bundle);
        int chart = B.base()->chart_index(tok[1]);
        auto comps = parse_expr_list(tail, B.base()->charts[chart].coords, st.params);
        require((int)comps.size() == B.rank(), "component count != rank");
        st.section->comps[chart] = comps;
        st.section->given[chart] = true;
      } else if (kw == "chain") {
        st.flush_all();
        require(tok.size() >= 6 && tok[2] == "on" && tok[4] == "dim",
                "chain <name> on <atlas> dim <q>");
        st.cur_chain = tok[1];
        st.set.chains[tok[1]] = Chain((int)st.num(tok[5]));
        st.form_atlas = tok[3]; // reuse slot for the chain's atlas
      } else if (kw == "cell") {
        require(!st.cur_chain.empty() && has_tail, "cell outside chain block");
        AtlasPtr a = st.set.atlas(st.form_atlas);
        int chart = a->chart_index(tok[1]);
        int coeff = tok.size() >= 3 ? (int)st.num(tok[2]) : 1;
        Chain& ch = st.set.chains[st.cur_chain];
        std::vector<std::string> uvars;
        for (int i = 0; i < ch.dim(); ++i) uvars.push_back("u" + std::to_string(i + 1));
        auto comps = parse_expr_list(tail, uvars, st.params);
        require((int)comps.size() == a->dim(), "cell component count != atlas dim");
        ch.add(ParamSimplex::from_exprs(a, chart, ch.dim(), comps), coeff);
      } else if (kw == "form") {
        st.flush_all();
        require(tok.size() >= 6 && tok[2] == "on" && tok[4] == "degree",
                "form <name> on <atlas> degree <k>");
        st.cur_form = tok[1];
        st.form_atlas = tok[3];
        st.form_degree = (int)st.num(tok[5]);
        st.form_coeffs.assign(st.set.atlas(tok[3])->charts.size(), {});
      } else if (kw == "coeff") {
        require(!st.cur_form.empty() && has_tail, "coeff outside form block");
        AtlasPtr a = st.set.atlas(st.form_atlas);
        int chart = a->chart_index(tok[1]);
        uint32_t mask = axes_mask(a->charts[chart], tok, 2, tok.size() - 2);
        st.form_coeffs[chart].push_back(
            {mask, Expr::parse(tail, a->charts[chart].coords, st.params)});
      } else if (kw == "pair") {
        st.flush_all();
        require(tok.size() >= 6 && tok[2] == "on" && tok[4] == "degree",
                "pair <name> on <atlas> degree <k>");
        st.pair = PendingPair{};
        st.pair->name = tok[1];
        st.pair->atlas = tok[3];
        st.pair->degree = (int)st.num(tok[5]);
        size_t ncharts = st.set.atlas(tok[3])->charts.size();
        st.pair->omega.assign(ncharts, {});
        st.pair->phi.assign(ncharts, {});
      } else if (kw == "modulus") {
        require(st.pair.has_value(), "modulus outside pair block");
        st.pair->modulus = st.num(tok[1]);
      } else if (kw == "clearance") {
        require(st.pair.has_value(), "clearance outside pair block");
        st.pair->clearance = st.num(tok[1]);
      } else if ((kw == "omega" || kw == "phi") && st.pair.has_value()) {
        require(has_tail, "omega/phi <chart> <axes...> : <coeff>");
        AtlasPtr a = st.set.atlas(st.pair->atlas);
        int chart = a->chart_index(tok[1]);
        uint32_t mask = axes_mask(a->charts[chart], tok, 2, tok.size() - 2);
        auto& dst = (kw == "omega") ? st.pair->omega : st.pair->phi;
        dst[chart].push_back(
            {mask, Expr::parse(tail, a->charts[chart].coords, st.params)});
      } else if (kw == "singular") {
        require(st.pair.has_value() && has_tail,
                "singular <omega|phi> <chart> dim <q> : <param exprs>");
        AtlasPtr a = st.set.atlas(st.pair->atlas);
        int chart = a->chart_index(tok[2]);
        require(tok[3] == "dim", "singular ... dim <q>");
        int q = (int)st.num(tok[4]);
        std::vector<std::string> uvars;
        for (int i = 0; i < q; ++i) uvars.push_back("u" + std::to_string(i + 1));
        auto comps = parse_expr_list(tail, uvars, st.params);
        auto cell = ParamSimplex::from_exprs(a, chart, q, comps);
        if (tok[1] == "omega")
          st.pair->sing_omega.push_back(cell);
        else
          st.pair->sing_phi.push_back(cell);
      } else {
        fail("unknown directive '" + kw + "'");
      }
    } catch (const Error& e) {
      fail("fixture line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  st.flush_all();
  return st.set;
}

FixtureSet load_fixtures_file(const std::string& path, const ParamMap& overrides) {
  std::ifstream in(path);
  require(in.good(), "cannot open fixture file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_fixtures(buf.str(), overrides);
}

FixtureSet builtin_fixtures(const ParamMap& overrides) {
  return load_fixtures(builtin_fixture_text(), overrides);
}

BundleWithConnection builtin_bundle(const std::string& name, const ParamMap& params) {
  return builtin_fixtures(params).bundle(name);
}

} // namespace gbc
