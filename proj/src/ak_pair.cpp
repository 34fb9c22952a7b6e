#include "gbc/ak_pair.hpp"

#include <cmath>
#include <limits>

namespace gbc {

SingularSet::SingularSet(std::vector<ParamSimplex> cells, int samples_per_axis) {
  for (const auto& cell : cells) {
    const auto& chart = cell.atlas()->charts[cell.chart()];
    const int q = cell.dim();
    if (q == 0) {
      samples_.push_back(chart.embed(cell(Point{})));
      continue;
    }
    std::vector<int> idx(q, 0);
    for (;;) {
      Point u(q);
      for (int i = 0; i < q; ++i) u[i] = (double)idx[i] / samples_per_axis;
      samples_.push_back(chart.embed(cell(u)));
      int i = 0;
      while (i < q && ++idx[i] > samples_per_axis) idx[i++] = 0;
      if (i == q) break;
    }
  }
}

double SingularSet::distance(const Chart& chart, const Point& p) const {
  if (samples_.empty()) return std::numeric_limits<double>::infinity();
  Point e = chart.embed(p);
  double best = std::numeric_limits<double>::infinity();
  for (const auto& s : samples_) {
    require(s.size() == e.size(), "singular-set embedding dimension mismatch");
    double d2 = 0.0;
    for (size_t i = 0; i < e.size(); ++i) d2 += (e[i] - s[i]) * (e[i] - s[i]);
    best = std::min(best, d2);
  }
  return std::sqrt(best);
}

namespace {

double chain_clearance(const SingularSet& set, const Chain& c, int grid) {
  double best = std::numeric_limits<double>::infinity();
  if (set.empty()) return best;
  for (auto& [cell, coeff] : c.cells()) {
    const auto& chart = cell.atlas()->charts[cell.chart()];
    const int q = cell.dim();
    if (q == 0) {
      best = std::min(best, set.distance(chart, cell(Point{})));
      continue;
    }
    std::vector<int> idx(q, 0);
    for (;;) {
      Point u(q);
      for (int i = 0; i < q; ++i) u[i] = (double)idx[i] / grid;
      best = std::min(best, set.distance(chart, cell(u)));
      int i = 0;
      while (i < q && ++idx[i] > grid) idx[i++] = 0;
      if (i == q) break;
    }
  }
  return best;
}

} // namespace

bool is_admissible(const AkPair& p, const Chain& c, int grid_per_axis) {
  if (chain_clearance(p.e_omega, c, grid_per_axis) <= p.clearance) return false;
  Chain b = c.dim() >= 1 ? c.boundary() : Chain(0);
  if (!b.empty() && chain_clearance(p.e_phi, b, grid_per_axis) <= p.clearance)
    return false;
  return true;
}

double period(const AkPair& p, const Chain& c, int order) {
  require(is_admissible(p, c), "chain is not admissible for this pair");
  double w = integrate(p.omega, c, order);
  double f = 0.0;
  if (c.dim() >= 1) {
    Chain b = c.boundary();
    if (!b.empty()) f = integrate(p.phi, b, order);
  }
  return w - f;
}

PairCheckReport check_pair(const AkPair& p, const std::vector<Chain>& samples,
                           int order) {
  PairCheckReport rep;
  for (const auto& c : samples) {
    if (!is_admissible(p, c)) {
      ++rep.skipped;
      continue;
    }
    ++rep.admissible;
    double R = period(p, c, order);
    rep.max_residual = std::max(rep.max_residual, distance_to_lattice(R, p.modulus));
  }
  rep.vacuous = (rep.admissible == 0);
  return rep;
}

ModValue eval_induced_character(const AkPair& p, const Chain& c_k, const Chain& z_prime,
                                int order) {
  if (!z_prime.empty())
    require(chain_clearance(p.e_phi, z_prime, 64) > p.clearance,
            "z' violates the clearance from e(phi)");
  double v = 0.0;
  if (!c_k.empty()) v += integrate(p.omega, c_k, order);
  if (!z_prime.empty()) v += integrate(p.phi, z_prime, order);
  return mod_reduce(v, p.modulus);
}

double decomposition_residual(const Chain& z, const Chain& c_k, const Chain& z_prime,
                              const std::vector<FormField>& closed_tests, int order) {
  double worst = 0.0;
  for (const auto& f : closed_tests) {
    double r = integrate(f, z, order);
    if (!c_k.empty()) {
      Chain bc = c_k.boundary();
      if (!bc.empty()) r -= integrate(f, bc, order);
    }
    if (!z_prime.empty()) r -= integrate(f, z_prime, order);
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

double lemma1_check(const AkPair& p, const std::pair<Chain, Chain>& dec1,
                    const std::pair<Chain, Chain>& dec2, int order) {
  ModValue a = eval_induced_character(p, dec1.first, dec1.second, order);
  ModValue b = eval_induced_character(p, dec2.first, dec2.second, order);
  return mod_distance(a, b);
}

} // namespace gbc
