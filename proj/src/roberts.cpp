#include "carleson/roberts.hpp"

#include <algorithm>
#include <cmath>

#include "carleson/error.hpp"
#include "carleson/summation.hpp"

namespace carleson {

GrateResult grate(const AtomicMeasure& mu, const std::vector<Arc>& partition, double C, const GaugeFunction& g) {
  if (!(C > 0.0)) throw RangeError("grating constant C must be positive");
  double covered = 0.0;
  for (const auto& I : partition) covered += I.length();
  if (std::abs(covered - 1.0) > 1e-9) throw RangeError("partition must tile the circle");
  GrateResult out;
  std::vector<Atom> grated, rest;
  for (const auto& I : partition) {
    const double m = mu.mass_in(I);
    if (m == 0.0) continue;
    const double cap = C * g.phi(I.length());
    const bool heavy = m > cap;
    const double s = heavy ? cap / m : 1.0;
    if (heavy) out.heavy.push_back(I);
    for (const auto& a : mu.atoms()) {
      if (!I.contains(a.position)) continue;
      const double gm = a.mass * s;
      grated.push_back({a.position, gm});
      if (heavy) rest.push_back({a.position, a.mass - gm});
    }
  }
  out.grated = AtomicMeasure(std::move(grated));
  out.remainder = AtomicMeasure(std::move(rest));
  return out;
}

namespace {

AtomicMeasure measure_from(const AtomicMeasure& shape, const std::vector<double>& masses) {
  std::vector<Atom> atoms;
  for (std::size_t i = 0; i < masses.size(); ++i) {
    if (masses[i] > 0.0) atoms.push_back({shape[i].position, masses[i]});
  }
  return AtomicMeasure(std::move(atoms));
}

// Runs of consecutive atoms sharing a generation-n dyadic arc.
template <class F>
void for_each_run(const AtomicMeasure& mu, int n, F f) {
  std::size_t i = 0;
  while (i < mu.size()) {
    const auto arc = DyadicArc::containing(mu[i].position, n);
    std::size_t j = i + 1;
    while (j < mu.size() && arc.contains(mu[j].position)) ++j;
    f(arc, i, j);
    i = j;
  }
}

}  // namespace

RobertsDecomposition roberts_decompose(const AtomicMeasure& mu, const GaugeFunction& g, const PhiDyadicGrid& grid,
                                       const RobertsParams& params) {
  if (!(params.C > 0.0)) throw RangeError("grating constant C must be positive");
  if (params.j0 < 0 || params.max_layers < 0) throw RangeError("j0 and max_layers must be non-negative");
  if (static_cast<int>(grid.generations.size()) < params.j0 + params.max_layers) {
    throw RangeError("grid too shallow for j0 + max_layers");
  }
  RobertsDecomposition d;
  d.input = mu;
  d.gauge = g;
  d.grid = grid;
  d.params = params;
  std::vector<double> remaining(mu.size());
  for (std::size_t i = 0; i < mu.size(); ++i) remaining[i] = mu[i].mass;
  d.layer_masses.assign(mu.size(), std::vector<double>(static_cast<std::size_t>(params.max_layers), 0.0));

  std::size_t prev_heavy = 0;
  int prev_gen = 0;
  for (int j = 0; j < params.max_layers; ++j) {
    const int n = grid.generations[static_cast<std::size_t>(j + params.j0)];
    RobertsLayer layer;
    layer.generation = n;
    std::vector<double> layer_mass(mu.size(), 0.0);
    const double cap = params.C * g.phi(std::ldexp(1.0, -n));
    for_each_run(mu, n, [&](const DyadicArc& arc, std::size_t lo, std::size_t hi) {
      const double m = pairwise_sum(remaining.begin() + static_cast<std::ptrdiff_t>(lo),
                                    remaining.begin() + static_cast<std::ptrdiff_t>(hi), [](double x) { return x; });
      if (m == 0.0) return;
      if (m > cap) {
        layer.heavy.push_back(arc);
        const double s = cap / m;
        for (std::size_t i = lo; i < hi; ++i) {
          layer_mass[i] = remaining[i] * s;
          remaining[i] -= layer_mass[i];
        }
      } else {
        for (std::size_t i = lo; i < hi; ++i) {
          layer_mass[i] = remaining[i];
          remaining[i] = 0.0;
        }
      }
    });
    // Light arcs of this layer: arcs of the partition inside the previous
    // layer's heavy arcs (the whole circle for the first layer) that are not heavy.
    const double candidates = j == 0 ? std::ldexp(1.0, n)
                                     : static_cast<double>(prev_heavy) * std::ldexp(1.0, n - prev_gen);
    layer.light_entropy = (candidates - static_cast<double>(layer.heavy.size())) * g.phi(std::ldexp(1.0, -n));
    for (std::size_t i = 0; i < mu.size(); ++i) d.layer_masses[i][static_cast<std::size_t>(j)] = layer_mass[i];
    layer.measure = measure_from(mu, layer_mass);
    prev_heavy = layer.heavy.size();
    prev_gen = n;
    d.layers.push_back(std::move(layer));
  }
  d.residual_masses = remaining;
  d.residual = measure_from(mu, remaining);
  return d;
}

LightEntropy light_arc_entropy(const RobertsDecomposition& d) {
  LightEntropy e;
  std::vector<double> parts;
  for (const auto& l : d.layers) parts.push_back(l.light_entropy);
  e.value = pairwise_sum(parts);
  e.grid_constant = std::max(1.0, d.grid.grid_constant);
  const int n = d.grid.generations[static_cast<std::size_t>(d.params.j0)];
  const double first = std::ldexp(1.0, n) * d.gauge.phi(std::ldexp(1.0, -n));
  e.bound = e.grid_constant * (first + d.input.total_mass() / d.params.C);
  e.holds = e.value <= e.bound * (1.0 + 1e-12);
  return e;
}

Certification certify(const RobertsDecomposition& d, double tolerance) {
  Certification c;
  c.conserved = true;
  for (std::size_t i = 0; i < d.input.size(); ++i) {
    std::vector<double> parts = d.layer_masses[i];
    parts.push_back(d.residual_masses[i]);
    const double total = pairwise_sum(parts);
    const double err = std::abs(total - d.input[i].mass) / d.input[i].mass;
    c.conservation_error = std::max(c.conservation_error, err);
  }
  c.conserved = c.conservation_error <= tolerance;

  // Exhaustive layer bound: arcs without mass satisfy the bound trivially, so
  // only arcs carrying atoms of the layer are checked.
  c.layer_bounds = true;
  for (const auto& layer : d.layers) {
    const double cap = d.params.C * d.gauge.phi(std::ldexp(1.0, -layer.generation));
    for_each_run(layer.measure, layer.generation, [&](const DyadicArc&, std::size_t lo, std::size_t hi) {
      const double m = layer.measure.mass_of_range(lo, hi);
      const double r = cap > 0.0 ? m / cap : HUGE_VAL;
      c.worst_layer_ratio = std::max(c.worst_layer_ratio, r);
    });
  }
  c.layer_bounds = c.worst_layer_ratio <= 1.0 + tolerance;

  // After layer j, every atom with remaining mass lies in a layer-j heavy arc.
  c.nested = true;
  std::vector<double> rem(d.input.size());
  for (std::size_t i = 0; i < d.input.size(); ++i) rem[i] = d.input[i].mass;
  for (std::size_t j = 0; j < d.layers.size(); ++j) {
    const auto& heavy = d.layers[j].heavy;
    for (std::size_t i = 0; i < d.input.size(); ++i) {
      rem[i] -= d.layer_masses[i][j];
      if (rem[i] <= tolerance * d.input[i].mass) continue;
      const auto arc = DyadicArc::containing(d.input[i].position, d.layers[j].generation);
      if (!std::binary_search(heavy.begin(), heavy.end(), arc)) c.nested = false;
    }
  }
  c.refining = true;
  for (std::size_t j = 0; j + 1 < d.layers.size(); ++j) {
    if (d.layers[j + 1].generation <= d.layers[j].generation) c.refining = false;
  }
  return c;
}

std::vector<ChargeRow> charges_bc_test(const AtomicMeasure& mu, const GaugeFunction& g, const PhiDyadicGrid& grid,
                                       double C, const std::vector<int>& offsets, int layers,
                                       const std::optional<ClosedSet>& E) {
  std::vector<ChargeRow> rows;
  for (int j0 : offsets) {
    auto d = roberts_decompose(mu, g, grid, {C, j0, layers});
    ChargeRow r;
    r.j0 = j0;
    std::vector<double> on_set, totals;
    for (const auto& l : d.layers) {
      totals.push_back(l.measure.total_mass());
      if (E) {
        double s = 0.0;
        for (const auto& a : l.measure.atoms()) {
          if (E->contains(a.position)) s += a.mass;
        }
        on_set.push_back(s);
      }
    }
    r.total_layer_mass = pairwise_sum(totals);
    r.layered_mass_on_set = pairwise_sum(on_set);
    r.residual_mass = d.residual.total_mass();
    rows.push_back(r);
  }
  return rows;
}

ClosedSet residual_carrier(const RobertsDecomposition& d) {
  if (d.layers.empty()) return ClosedSet::full_circle();
  const auto& heavy = d.layers.back().heavy;
  if (heavy.empty()) return ClosedSet();
  std::vector<Arc> residual, gaps;
  for (const auto& h : heavy) residual.push_back(h.arc());
  for (std::size_t i = 0; i < heavy.size(); ++i) {
    const double end = heavy[i].right();
    const double next = i + 1 < heavy.size() ? heavy[i + 1].left() : heavy[0].left() + 1.0;
    if (next - end > 0.0) gaps.emplace_back(Angle(end), next - end);
  }
  return ClosedSet(std::move(gaps), std::move(residual));
}

}  // namespace carleson
