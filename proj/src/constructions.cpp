#include "carleson/constructions.hpp"

#include <algorithm>
#include <cmath>

#include "carleson/error.hpp"

namespace carleson {

namespace {

struct Segment {
  double left;
  double length;
};

void validate(const CantorSpec& s) {
  if (!(s.A > 2.0) || !std::isfinite(s.A)) throw RangeError("Cantor ratio A must exceed 2");
  if (s.G < 0 || s.G > 30) throw RangeError("Cantor generations must lie in [0, 30]");
  if (s.G * std::log2(s.A) > kGenerationCap) throw RangeError("Cantor arcs fall below the resolution 2^-48");
}

std::vector<Segment> cantor_segments(const CantorSpec& s) {
  std::vector<Segment> arcs{{0.0, 1.0}};
  for (int n = 1; n <= s.G; ++n) {
    std::vector<Segment> next;
    next.reserve(2 * arcs.size());
    for (const auto& a : arcs) {
      const double child = a.length / s.A;
      next.push_back({a.left, child});
      next.push_back({a.left + a.length - child, child});
    }
    arcs.swap(next);
  }
  return arcs;
}

// Open gaps between consecutive closed segments, including the one through 1≡0.
std::vector<Arc> complement(const std::vector<Segment>& arcs) {
  std::vector<Arc> gaps;
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    const double end = arcs[i].left + arcs[i].length;
    const double next = i + 1 < arcs.size() ? arcs[i + 1].left : arcs[0].left + 1.0;
    const double g = next - end;
    if (g > 1e-15) gaps.emplace_back(Angle(end), g);
  }
  return gaps;
}

}  // namespace

CantorSet cantor_set(const CantorSpec& spec) {
  validate(spec);
  CantorSet out;
  auto arcs = cantor_segments(spec);
  std::vector<Arc> residual;
  for (const auto& a : arcs) {
    residual.emplace_back(Angle(a.left), a.length);
    out.defining_arcs.push_back(residual.back());
  }
  std::vector<Arc> gaps;
  if (spec.G > 0) gaps = complement(arcs);
  for (int n = 1; n <= spec.G; ++n) {
    out.gap_counts.push_back(std::size_t{1} << (n - 1));
    out.gap_lengths.push_back(std::pow(spec.A, -(n - 1)) * (1.0 - 2.0 / spec.A));
  }
  out.set = ClosedSet(std::move(gaps), std::move(residual));
  return out;
}

AtomicMeasure cantor_measure(const CantorSpec& spec) {
  validate(spec);
  auto arcs = cantor_segments(spec);
  const double m = std::ldexp(1.0, -spec.G);
  std::vector<Atom> atoms;
  atoms.reserve(arcs.size());
  for (const auto& a : arcs) atoms.push_back({Angle(a.left), m});
  return AtomicMeasure(std::move(atoms));
}

PrunedCantor pruned_cantor(double p, double alpha_exp, int G) {
  if (!(p > 0.0 && p < 0.5)) throw RangeError("pruned Cantor needs 0 < p < 1/2");
  if (!(alpha_exp > 1.0 && alpha_exp < 1.0 + p)) throw RangeError("pruned Cantor needs 1 < alpha_exp < 1 + p");
  if (G < 1 || G > 30) throw RangeError("pruned Cantor generations must lie in [1, 30]");
  PrunedCantor out;
  out.exponent = (1.0 - 2.0 * p) / (1.0 - p);
  out.A = std::exp2(1.0 / out.exponent);
  out.beta = 1.0 / (1.0 - 2.0 / out.A);
  if (G * std::log2(out.A) > kGenerationCap) throw RangeError("pruned Cantor arcs fall below the resolution 2^-48");

  std::vector<Segment> arcs{{0.0, 1.0}};
  for (int n = 1; n <= G; ++n) {
    PrunedGeneration gen;
    gen.n = n;
    gen.arcs_before = arcs.size();
    const double ell = arcs.front().length * (1.0 - 2.0 / out.A);
    gen.scale = std::log2(1.0 / ell);
    gen.threshold = std::pow(gen.scale, -alpha_exp) * std::exp2(out.exponent * gen.scale);
    gen.bad = static_cast<double>(gen.arcs_before) > gen.threshold;
    std::vector<Segment> next;
    for (const auto& a : arcs) {
      const double child = a.length / out.A;
      next.push_back({a.left, child});
      if (!gen.bad) next.push_back({a.left + a.length - child, child});
    }
    arcs.swap(next);
    out.census.push_back(gen);
  }

  auto gaps = complement(arcs);
  std::vector<Arc> residual;
  for (const auto& a : arcs) residual.emplace_back(Angle(a.left), a.length);
  std::vector<Atom> atoms;
  const double base = 1.0 - 2.0 / out.A;
  for (const auto& J : gaps) {
    const double w = std::pow(J.length(), out.exponent);
    atoms.push_back({J.left(), w});
    atoms.push_back({Angle(J.right()), w});
  }
  out.measure = AtomicMeasure(std::move(atoms));
  out.set = ClosedSet(std::move(gaps), std::move(residual));
  for (const auto& J : out.set.gaps()) {
    const double k = std::log(base / J.length()) / std::log(out.A);
    out.gap_generation.push_back(1 + static_cast<int>(std::lround(std::max(0.0, k))));
  }
  return out;
}

AtomicMeasure equally_spaced_atoms(int n, double eps) {
  if (n < 1) throw RangeError("need at least one atom");
  if (!(eps > 0.0 && eps < 1.0)) throw RangeError("epsilon must lie in (0,1)");
  const double m = std::pow(static_cast<double>(n), -(2.0 - eps));
  std::vector<Atom> atoms;
  atoms.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) atoms.push_back({Angle(static_cast<double>(k) / n), m});
  return AtomicMeasure(std::move(atoms));
}

AtomicMeasure independent_copies(const std::vector<AtomicMeasure>& copies, const std::vector<Arc>& targets,
                                 const std::vector<double>& weights) {
  if (copies.size() != targets.size() || copies.size() != weights.size()) {
    throw RangeError("copies, targets and weights must have equal length");
  }
  for (std::size_t i = 0; i < targets.size(); ++i) {
    for (std::size_t j = i + 1; j < targets.size(); ++j) {
      const double d = std::abs(circular_offset(targets[i].left(), targets[j].left()));
      const bool disjoint_forward =
          Angle(targets[j].left().turns() - targets[i].left().turns()).turns() >= targets[i].length();
      const bool disjoint_backward =
          Angle(targets[i].left().turns() - targets[j].left().turns()).turns() >= targets[j].length();
      if (d == 0.0 || !(disjoint_forward && disjoint_backward)) throw RangeError("target arcs must be disjoint");
    }
  }
  std::vector<Atom> atoms;
  for (std::size_t i = 0; i < copies.size(); ++i) {
    if (!(weights[i] >= 0.0)) throw RangeError("weights must be non-negative");
    for (const auto& a : copies[i].atoms()) {
      atoms.push_back({Angle(targets[i].left().turns() + a.position.turns() * targets[i].length()),
                       a.mass * weights[i]});
    }
  }
  return AtomicMeasure(std::move(atoms));
}

}  // namespace carleson
