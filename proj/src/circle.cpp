#include "carleson/circle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "carleson/error.hpp"
#include "carleson/summation.hpp"

namespace carleson {

Angle::Angle(double turns) {
  if (!std::isfinite(turns)) throw RangeError("angle must be finite");
  double t = turns - std::floor(turns);
  if (t >= 1.0) t = 0.0;  // -tiny rounds up to 1
  turns_ = t;
}

double Angle::radians() const { return 2.0 * std::numbers::pi * turns_; }

double circular_offset(Angle from, Angle to) {
  double d = to.turns() - from.turns();
  if (d >= 0.5) d -= 1.0;
  if (d < -0.5) d += 1.0;
  return d;
}

double circular_distance(Angle a, Angle b) { return std::abs(circular_offset(a, b)); }

Arc::Arc(Angle left, double length) : left_(left), length_(length) {
  if (!(length > 0.0 && length <= 1.0)) throw RangeError("arc length must lie in (0,1]");
}

bool Arc::contains(Angle x) const {
  const double l = left_.turns();
  const double r = l + length_;
  const double t = x.turns();
  if (t >= l) return t < r;
  return t + 1.0 < r;
}

DyadicArc::DyadicArc(int n, std::uint64_t k) : generation(n), index(k) {
  if (n < 0 || n > kGenerationCap) throw RangeError("dyadic generation outside [0, 48]");
  if (k >= (std::uint64_t{1} << n)) throw RangeError("dyadic index out of range");
}

DyadicArc DyadicArc::containing(Angle x, int n) {
  if (n < 0 || n > kGenerationCap) throw RangeError("dyadic generation outside [0, 48]");
  return {n, static_cast<std::uint64_t>(std::floor(std::ldexp(x.turns(), n)))};
}

double DyadicArc::left() const { return std::ldexp(static_cast<double>(index), -generation); }
double DyadicArc::length() const { return std::ldexp(1.0, -generation); }

bool DyadicArc::contains(Angle x) const {
  return static_cast<std::uint64_t>(std::floor(std::ldexp(x.turns(), generation))) == index;
}

bool DyadicArc::inside(const DyadicArc& a) const {
  if (generation < a.generation) return false;
  return (index >> (generation - a.generation)) == a.index;
}

AtomicMeasure::AtomicMeasure(std::vector<Atom> atoms) {
  for (const auto& a : atoms) {
    if (!std::isfinite(a.mass) || a.mass < 0.0) throw RangeError("atom masses must be finite and non-negative");
  }
  std::stable_sort(atoms.begin(), atoms.end(),
                   [](const Atom& a, const Atom& b) { return a.position < b.position; });
  for (const auto& a : atoms) {
    if (a.mass == 0.0) continue;
    if (!atoms_.empty() && atoms_.back().position == a.position) {
      atoms_.back().mass += a.mass;
    } else {
      atoms_.push_back(a);
    }
  }
}

double AtomicMeasure::total_mass() const { return mass_of_range(0, atoms_.size()); }

double AtomicMeasure::mass_of_range(std::size_t lo, std::size_t hi) const {
  return pairwise_sum(atoms_.begin() + static_cast<std::ptrdiff_t>(lo),
                      atoms_.begin() + static_cast<std::ptrdiff_t>(hi), [](const Atom& a) { return a.mass; });
}

std::pair<std::size_t, std::size_t> AtomicMeasure::index_range(double a, double b) const {
  auto cmp = [](const Atom& at, double v) { return at.position.turns() < v; };
  auto lo = std::lower_bound(atoms_.begin(), atoms_.end(), a, cmp);
  auto hi = b >= 1.0 ? atoms_.end() : std::lower_bound(lo, atoms_.end(), b, cmp);
  return {static_cast<std::size_t>(lo - atoms_.begin()), static_cast<std::size_t>(hi - atoms_.begin())};
}

std::pair<std::size_t, std::size_t> AtomicMeasure::index_range(const DyadicArc& I) const {
  return index_range(I.left(), I.right());
}

double AtomicMeasure::mass_in(const DyadicArc& I) const {
  auto [lo, hi] = index_range(I);
  return mass_of_range(lo, hi);
}

double AtomicMeasure::mass_in(const Arc& I) const {
  const double l = I.left().turns();
  const double r = I.right();
  if (r <= 1.0) {
    auto [lo, hi] = index_range(l, r);
    return mass_of_range(lo, hi);
  }
  auto [lo1, hi1] = index_range(l, 1.0);
  auto [lo2, hi2] = index_range(0.0, r - 1.0);
  // The wrapped part must not reach back into [l, 1).
  hi2 = std::min(hi2, lo1);
  return mass_of_range(lo1, hi1) + mass_of_range(lo2, hi2);
}

bool operator==(const AtomicMeasure& a, const AtomicMeasure& b) {
  if (a.atoms_.size() != b.atoms_.size()) return false;
  for (std::size_t i = 0; i < a.atoms_.size(); ++i) {
    if (!(a.atoms_[i].position == b.atoms_[i].position) || a.atoms_[i].mass != b.atoms_[i].mass) return false;
  }
  return true;
}

double measure_of_arc(const AtomicMeasure& mu, const Arc& I) { return mu.mass_in(I); }

AtomicMeasure restrict_and_scale(const AtomicMeasure& mu, const Arc& I, double c) {
  if (!(c >= 0.0) || !std::isfinite(c)) throw RangeError("scale factor must be finite and non-negative");
  std::vector<Atom> out;
  for (const auto& a : mu.atoms()) {
    if (I.contains(a.position)) out.push_back({a.position, a.mass * c});
  }
  return AtomicMeasure(std::move(out));
}

AtomicMeasure scaled(const AtomicMeasure& mu, double c) {
  if (!(c >= 0.0) || !std::isfinite(c)) throw RangeError("scale factor must be finite and non-negative");
  std::vector<Atom> out(mu.atoms().begin(), mu.atoms().end());
  for (auto& a : out) a.mass *= c;
  return AtomicMeasure(std::move(out));
}

AtomicMeasure operator+(const AtomicMeasure& a, const AtomicMeasure& b) {
  std::vector<Atom> out(a.atoms().begin(), a.atoms().end());
  out.insert(out.end(), b.atoms().begin(), b.atoms().end());
  return AtomicMeasure(std::move(out));
}

namespace {

bool by_left(const Arc& a, const Arc& b) { return a.left() < b.left(); }

double total_length(std::span<const Arc> arcs) {
  return pairwise_sum(arcs.begin(), arcs.end(), [](const Arc& a) { return a.length(); });
}

}  // namespace

ClosedSet::ClosedSet(std::vector<Arc> gaps, std::vector<Arc> residual)
    : gaps_(std::move(gaps)), residual_(std::move(residual)) {
  std::sort(gaps_.begin(), gaps_.end(), by_left);
  std::sort(residual_.begin(), residual_.end(), by_left);
  if (is_empty()) return;
  const double total = total_length(gaps_) + total_length(residual_);
  if (std::abs(total - 1.0) > 1e-9) throw RangeError("gaps and residual arcs must have total length 1");
  for (std::size_t i = 0; i + 1 < gaps_.size(); ++i) {
    if (gaps_[i].right() > gaps_[i + 1].left().turns() + 1e-12) throw RangeError("gaps overlap");
  }
}

ClosedSet ClosedSet::full_circle() { return ClosedSet({}, {Arc(Angle(0.0), 1.0)}); }

ClosedSet ClosedSet::from_points(std::vector<Angle> points) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  if (points.empty()) return ClosedSet();
  std::vector<Arc> gaps;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double a = points[i].turns();
    const double b = i + 1 < points.size() ? points[i + 1].turns() : points[0].turns() + 1.0;
    gaps.emplace_back(points[i], b - a);
  }
  return ClosedSet(std::move(gaps), {});
}

ClosedSet ClosedSet::support_of(const AtomicMeasure& mu) {
  std::vector<Angle> pts;
  for (const auto& a : mu.atoms()) pts.push_back(a.position);
  return from_points(std::move(pts));
}

double ClosedSet::residual_length() const { return total_length(residual_); }

double ClosedSet::max_residual_length() const {
  double m = 0.0;
  for (const auto& r : residual_) m = std::max(m, r.length());
  return m;
}

bool ClosedSet::inside_some_gap(double a, double b) const {
  if (gaps_.empty()) return false;
  auto test = [&](const Arc& g) {
    const double l = g.left().turns();
    const double r = g.right();
    if (l < a && b < r) return true;
    return r > 1.0 && l - 1.0 < a && b < r - 1.0;
  };
  // Last gap starting strictly before a, plus the wrapping gap (the last one).
  auto it = std::lower_bound(gaps_.begin(), gaps_.end(), a,
                             [](const Arc& g, double v) { return g.left().turns() < v; });
  if (it != gaps_.begin() && test(*(it - 1))) return true;
  return test(gaps_.back());
}

bool ClosedSet::closed_arc_meets(double a, double b) const {
  if (is_empty()) return false;
  return !inside_some_gap(a, b);
}

bool ClosedSet::contains(Angle x) const {
  if (is_empty()) return false;
  const double t = x.turns();
  for (const auto& g : gaps_) {
    const double l = g.left().turns();
    const double r = g.right();
    if ((l < t && t < r) || (l < t + 1.0 && t + 1.0 < r)) return false;
  }
  return true;
}

MeetingCensus dyadic_meeting_census(const ClosedSet& E, int depth, std::size_t enumeration_limit) {
  if (depth < 0 || depth > kGenerationCap) throw RangeError("depth outside [0, 48]");
  MeetingCensus out;
  std::vector<DyadicArc> level;
  if (E.meets(DyadicArc(0, 0))) level.emplace_back(0, 0);
  out.counts.push_back(static_cast<double>(level.size()));
  bool exact = true;
  for (int n = 1; n <= depth; ++n) {
    if (exact && 2 * level.size() > enumeration_limit) exact = false;
    if (!exact) {
      out.counts.push_back(2.0 * out.counts.back());
      continue;
    }
    std::vector<DyadicArc> next;
    for (const auto& I : level) {
      for (int c = 0; c < 2; ++c) {
        DyadicArc ch = I.child(c);
        if (E.meets(ch)) next.push_back(ch);
      }
    }
    level.swap(next);
    out.counts.push_back(static_cast<double>(level.size()));
    out.exact_through = n;
  }
  return out;
}

std::vector<DyadicArc> dyadic_arcs_meeting(const ClosedSet& E, int n) {
  if (n < 0 || n > kGenerationCap) throw RangeError("generation outside [0, 48]");
  std::vector<DyadicArc> level;
  if (E.meets(DyadicArc(0, 0))) level.emplace_back(0, 0);
  for (int g = 1; g <= n; ++g) {
    std::vector<DyadicArc> next;
    for (const auto& I : level) {
      for (int c = 0; c < 2; ++c) {
        DyadicArc ch = I.child(c);
        if (E.meets(ch)) next.push_back(ch);
      }
    }
    level.swap(next);
  }
  return level;
}

std::vector<WhitneyPiece> whitney_decompose(const Arc& J, int depth, double min_length) {
  if (depth < 0) throw RangeError("whitney depth must be non-negative");
  const double L = J.length();
  if (L < min_length) throw RangeError("arc below minimum resolution");
  const double l = J.left().turns();
  if (depth == 0) return {WhitneyPiece{J, 0, false}};

  // Boundaries as offsets from the left end, then materialized so that the
  // pieces tile [l, l+L) with no rounding gaps.
  std::vector<double> offsets{0.0};
  std::vector<int> levels;
  std::vector<bool> rem;
  double x = std::ldexp(L, -(depth + 1));
  offsets.push_back(x);
  levels.push_back(-depth);
  rem.push_back(true);
  for (int k = depth - 1; k >= 1; --k) {
    x += std::ldexp(L, -(k + 2));
    offsets.push_back(x);
    levels.push_back(-k);
    rem.push_back(false);
  }
  const double centre_end = x + 0.5 * L;
  offsets.push_back(centre_end);
  levels.push_back(0);
  rem.push_back(false);
  x = centre_end;
  for (int k = 1; k <= depth - 1; ++k) {
    x += std::ldexp(L, -(k + 2));
    offsets.push_back(x);
    levels.push_back(k);
    rem.push_back(false);
  }
  offsets.push_back(L);
  levels.push_back(depth);
  rem.push_back(true);

  std::vector<WhitneyPiece> out;
  for (std::size_t i = 0; i + 1 < offsets.size(); ++i) {
    const double a = l + offsets[i];
    const double b = l + offsets[i + 1];
    if (!(b > a)) throw RangeError("arc below minimum resolution");
    out.push_back({Arc(Angle(a), b - a), levels[i], rem[i]});
  }
  return out;
}

}  // namespace carleson
