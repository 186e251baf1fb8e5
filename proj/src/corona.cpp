#include "carleson/corona.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "carleson/bc_norm.hpp"
#include "carleson/error.hpp"
#include "carleson/gauge.hpp"
#include "carleson/series.hpp"
#include "carleson/summation.hpp"

namespace carleson {

namespace {

double density(const AtomicMeasure& mu, const DyadicArc& I) { return mu.mass_in(I) / I.length(); }

class Builder {
 public:
  Builder(const AtomicMeasure& mu, const CoronaParams& p) : mu_(mu), p_(p), light_cut_(p.M / p.light_ratio_divisor) {
    d_.params = p;
    d_.input = mu;
  }

  CoronaDecomposition run() {
    scan_heavy(DyadicArc(0, 0), -1, 0);
    return std::move(d_);
  }

 private:
  // Maximal arcs of density >= M inside `arc` (arc included).
  void scan_heavy(const DyadicArc& arc, int parent_light, int level) {
    const double m = mu_.mass_in(arc);
    if (m == 0.0) return;
    if (m / arc.length() >= p_.M) {
      const int h = static_cast<int>(d_.heavy.size());
      HeavyNode node;
      node.arc = arc;
      node.level = level;
      node.parent = parent_light;
      node.meeting_counts.assign(static_cast<std::size_t>(p_.depth) + 1, 0.0);
      d_.heavy.push_back(std::move(node));
      if (parent_light >= 0) d_.light[static_cast<std::size_t>(parent_light)].heavy_children.push_back(h);
      scan_light(h, arc);
      return;
    }
    if (arc.generation >= p_.depth) {
      if (parent_light >= 0) {
        d_.light[static_cast<std::size_t>(parent_light)].unresolved.push_back(arc);
      } else {
        d_.root_unresolved.push_back(arc);
      }
      return;
    }
    scan_heavy(arc.child(0), parent_light, level);
    scan_heavy(arc.child(1), parent_light, level);
  }

  // `arc` lies in heavy node h and has density > M/divisor (or is h itself).
  void scan_light(int h, const DyadicArc& arc) {
    auto& node = d_.heavy[static_cast<std::size_t>(h)];
    node.meeting_counts[static_cast<std::size_t>(arc.generation)] += 1.0;
    if (arc.generation >= p_.depth) {
      node.unresolved.push_back(arc);
      return;
    }
    for (int c = 0; c < 2; ++c) {
      const auto child = arc.child(c);
      if (density(mu_, child) <= light_cut_) {
        const int l = static_cast<int>(d_.light.size());
        LightNode ln;
        ln.arc = child;
        ln.level = d_.heavy[static_cast<std::size_t>(h)].level;
        ln.parent = h;
        d_.light.push_back(std::move(ln));
        d_.heavy[static_cast<std::size_t>(h)].light_children.push_back(l);
        scan_heavy(child, l, d_.light[static_cast<std::size_t>(l)].level + 1);
      } else {
        scan_light(h, child);
      }
    }
  }

  const AtomicMeasure& mu_;
  CoronaParams p_;
  double light_cut_;
  CoronaDecomposition d_;
};

}  // namespace

CoronaDecomposition corona_decompose(const AtomicMeasure& mu, const CoronaParams& params) {
  if (!(params.M > 0.0)) throw RangeError("corona threshold M must be positive");
  if (params.depth < 0 || params.depth > kGenerationCap) throw RangeError("corona depth outside [0, 48]");
  if (!(params.light_ratio_divisor > 1.0)) throw RangeError("light_ratio_divisor must exceed 1");
  return Builder(mu, params).run();
}

std::vector<ClosedSet> extract_bc_sets(const CoronaDecomposition& d) {
  std::vector<ClosedSet> out;
  out.reserve(d.heavy.size());
  for (const auto& h : d.heavy) {
    std::vector<Arc> gaps, residual;
    for (int l : h.light_children) gaps.push_back(d.light[static_cast<std::size_t>(l)].arc.arc());
    if (h.arc.length() < 1.0) gaps.emplace_back(Angle(h.arc.right()), 1.0 - h.arc.length());
    for (const auto& u : h.unresolved) residual.push_back(u.arc());
    out.emplace_back(std::move(gaps), std::move(residual));
  }
  return out;
}

CoronaCheck check_corona(const CoronaDecomposition& d) {
  CoronaCheck c;
  const auto& mu = d.input;
  const double M = d.params.M;
  const double cut = M / d.params.light_ratio_divisor;
  for (std::size_t i = 0; i < d.heavy.size(); ++i) {
    const auto& h = d.heavy[i];
    if (density(mu, h.arc) < M) c.maximality = false;
    if (h.parent >= 0) {
      const auto& l = d.light[static_cast<std::size_t>(h.parent)];
      if (!h.arc.inside(l.arc) || h.arc == l.arc) c.alternation = false;
    }
    if (h.arc.generation > 0 && density(mu, h.arc.parent()) >= M) c.maximality = false;
    for (int li : h.light_children) {
      if (d.light[static_cast<std::size_t>(li)].parent != static_cast<int>(i)) c.alternation = false;
    }
  }
  for (std::size_t j = 0; j < d.light.size(); ++j) {
    const auto& l = d.light[j];
    if (l.parent < 0 || !l.arc.inside(d.heavy[static_cast<std::size_t>(l.parent)].arc)) c.alternation = false;
    if (density(mu, l.arc) > cut) c.maximality = false;
    if (density(mu, l.arc.parent()) <= cut) c.maximality = false;
    double covered = 0.0;
    for (int hi : l.heavy_children) covered += d.heavy[static_cast<std::size_t>(hi)].arc.length();
    const double r = covered / (l.arc.length() / d.params.light_ratio_divisor);
    c.worst_packing = std::max(c.worst_packing, r);
  }
  c.packing = c.worst_packing <= 1.0 + 1e-12;

  // Every dyadic arc inside a heavy node and not inside one of its light
  // children, down to the cap.
  for (const auto& h : d.heavy) {
    std::set<DyadicArc> lights;
    for (int li : h.light_children) lights.insert(d.light[static_cast<std::size_t>(li)].arc);
    std::vector<DyadicArc> stack{h.arc};
    while (!stack.empty()) {
      const auto I = stack.back();
      stack.pop_back();
      if (lights.count(I)) continue;
      ++c.arcs_checked;
      const double r = density(mu, I);
      c.min_density_on_sets = std::min(c.min_density_on_sets, r);
      if (!(r > cut)) c.dense_on_sets = false;
      if (I.generation < d.params.depth) {
        stack.push_back(I.child(0));
        stack.push_back(I.child(1));
      }
    }
  }

  std::vector<double> parts;
  for (const auto& h : d.heavy) {
    for (const auto& u : h.unresolved) parts.push_back(mu.mass_in(u));
  }
  for (const auto& l : d.light) {
    for (const auto& u : l.unresolved) parts.push_back(mu.mass_in(u));
  }
  for (const auto& u : d.root_unresolved) parts.push_back(mu.mass_in(u));
  const double total = mu.total_mass();
  const double covered = pairwise_sum(parts);
  c.coverage_error = total > 0.0 ? std::abs(covered - total) / total : covered;
  c.coverage = c.coverage_error <= 1e-12;
  return c;
}

CarriedAreaBound carried_area_bound(const CoronaDecomposition& d, double factor, int sweep_depth) {
  if (!(factor > 0.0)) throw RangeError("threshold factor must be positive");
  CarriedAreaBound b;
  std::vector<double> parts;
  for (const auto& h : d.heavy) {
    for (std::size_t g = 0; g < h.meeting_counts.size(); ++g) {
      if (h.meeting_counts[g] > 0.0) parts.push_back(h.meeting_counts[g] * std::ldexp(1.0, -static_cast<int>(g)));
    }
  }
  b.dyadic_sum = pairwise_sum(parts);
  b.threshold = factor * d.params.M / d.params.light_ratio_divisor;
  SweepOptions opt;
  opt.depth = sweep_depth;
  b.area = area_sweep(d.input, b.threshold, 1.0, opt).value;
  b.K = b.area > 0.0 ? b.dyadic_sum / b.area : (b.dyadic_sum > 0.0 ? HUGE_VAL : 0.0);
  return b;
}

SweepResult sublevel_area_integral(const AtomicMeasure& mu, double c, double sigma, int depth) {
  if (!(c > 0.0 && c < 1.0)) throw RangeError("sublevel c must lie in (0, 1)");
  SweepOptions opt;
  opt.depth = depth;
  return area_sweep(mu, std::log(1.0 / c), sigma, opt);
}

int resolved_generation(const AtomicMeasure& mu) {
  if (mu.size() < 2) return 0;
  double gap = 1.0 - (mu[mu.size() - 1].position.turns() - mu[0].position.turns());
  for (std::size_t i = 0; i + 1 < mu.size(); ++i) {
    gap = std::min(gap, mu[i + 1].position.turns() - mu[i].position.turns());
  }
  if (!(gap > 0.0)) return kGenerationCap;
  return std::min(kGenerationCap, static_cast<int>(std::floor(-std::log2(gap))));
}

namespace {

// Per-gap values binned by the dyadic generation of the gap length.
std::vector<double> bin_by_gap_generation(const ClosedSet& E, const std::vector<double>& per_gap, int resolved) {
  std::vector<double> bins(static_cast<std::size_t>(resolved) + 1, 0.0);
  const auto gaps = E.gaps();
  for (std::size_t i = 0; i < gaps.size() && i < per_gap.size(); ++i) {
    int g = static_cast<int>(std::floor(-std::log2(gaps[i].length())));
    g = std::clamp(g, 0, resolved);
    bins[static_cast<std::size_t>(g)] += per_gap[i];
  }
  return bins;
}

ChainCondition truncate(std::string name, std::vector<double> terms, double value, int resolved) {
  ChainCondition c;
  c.name = std::move(name);
  c.value = value;
  // The generation where atoms separate reflects the truncation, not the
  // measure, so the flag only looks at the strictly coarser ones.
  c.diverges = windowed_divergence(terms, static_cast<std::size_t>(resolved));
  terms.resize(std::min(terms.size(), static_cast<std::size_t>(resolved) + 1));
  c.terms = std::move(terms);
  return c;
}

ChainCondition carried_sets_condition(const AtomicMeasure& mu, const GaugeFunction& g, const ChainParams& params,
                                      int resolved, const char* name) {
  CoronaParams cp;
  cp.M = params.M;
  cp.light_ratio_divisor = params.light_ratio_divisor;
  cp.depth = kGenerationCap;
  auto d = corona_decompose(mu, cp);
  std::vector<double> terms(static_cast<std::size_t>(cp.depth) + 1, 0.0);
  for (const auto& h : d.heavy) {
    for (std::size_t n = 0; n < h.meeting_counts.size(); ++n) terms[n] += h.meeting_counts[n];
  }
  for (std::size_t n = 0; n < terms.size(); ++n) {
    if (terms[n] == 0.0) continue;
    const double L = std::ldexp(1.0, -static_cast<int>(n));
    terms[n] *= L * L / g.lambda(L);
  }
  return truncate(name, terms, pairwise_sum(terms), resolved);
}

ChainReport finish_chain(ChainReport r) {
  bool finite_before = false;
  for (const auto& c : r.conditions) {
    if (finite_before && c.diverges) r.consistent = false;
    finite_before = finite_before || !c.diverges;
  }
  return r;
}

int resolved_of(const AtomicMeasure& mu, const ChainParams& params) {
  const int r = params.resolved ? *params.resolved : resolved_generation(mu);
  if (r < 0 || r > kGenerationCap) throw RangeError("resolved generation outside [0, 48]");
  return r;
}

SweepResult chain_area(const AtomicMeasure& mu, const ChainParams& params, double sigma, int resolved) {
  return sublevel_area_integral(mu, params.level, sigma, std::clamp(resolved + 4, 30, kGenerationCap));
}

}  // namespace

ChainReport thm11_pipeline(const AtomicMeasure& mu, const ChainParams& params) {
  ChainReport r;
  r.resolved = resolved_of(mu, params);
  if (mu.empty()) return r;
  const auto E = ClosedSet::support_of(mu);
  QuadratureOptions q;
  q.whitney_depth = params.whitney_depth;
  auto nev = nevanlinna_norm(mu, E, q);
  r.conditions.push_back(
      truncate("nevanlinna", bin_by_gap_generation(E, nev.per_gap, r.resolved), nev.value, r.resolved));
  auto area = chain_area(mu, params, 1.0, r.resolved);
  r.conditions.push_back(truncate("area", area.terms, area.value, r.resolved));
  r.conditions.push_back(carried_sets_condition(mu, GaugeFunction::entropy(), params, r.resolved, "carried-sets"));
  return finish_chain(std::move(r));
}

ChainReport thm12_pipeline(const AtomicMeasure& mu, double p, const ChainParams& params) {
  if (!(p > 0.0 && p < 0.5)) throw RangeError("H^p exponent must lie in (0, 1/2)");
  ChainReport r;
  r.resolved = resolved_of(mu, params);
  if (mu.empty()) return r;
  const auto E = ClosedSet::support_of(mu);
  QuadratureOptions q;
  q.whitney_depth = params.whitney_depth;
  auto hp = hp_norm_boundary(mu, E, p, q);
  r.conditions.push_back(truncate("hp", bin_by_gap_generation(E, hp.per_gap, r.resolved), hp.value, r.resolved));
  auto area = chain_area(mu, params, 1.0 + p, r.resolved);
  r.conditions.push_back(truncate("area", area.terms, area.value, r.resolved));
  r.conditions.push_back(
      carried_sets_condition(mu, GaugeFunction::power(1.0 - p), params, r.resolved, "carried-sets"));
  return finish_chain(std::move(r));
}

}  // namespace carleson
