#pragma once

// Geometry and measure primitives on the unit circle. The circle has total
// length 1: angles are measured in turns and arc lengths in the same unit.

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace carleson {

inline constexpr int kGenerationCap = 48;

class Angle {
 public:
  Angle() = default;
  // Reduces modulo 1 into [0,1). Throws RangeError on non-finite input.
  explicit Angle(double turns);

  double turns() const { return turns_; }
  double radians() const;

  friend bool operator==(Angle a, Angle b) { return a.turns_ == b.turns_; }
  friend bool operator<(Angle a, Angle b) { return a.turns_ < b.turns_; }

 private:
  double turns_ = 0.0;
};

// Signed offset from `from` to `to`, in [-1/2, 1/2).
double circular_offset(Angle from, Angle to);
double circular_distance(Angle a, Angle b);

// Half-open arc [left, left + length), wrapping through 0 when needed.
class Arc {
 public:
  Arc(Angle left, double length);

  Angle left() const { return left_; }
  double length() const { return length_; }
  // Unreduced right endpoint; may exceed 1 for wrapping arcs.
  double right() const { return left_.turns() + length_; }
  bool wraps() const { return right() > 1.0; }
  Angle midpoint() const { return Angle(left_.turns() + 0.5 * length_); }
  bool contains(Angle x) const;

 private:
  Angle left_;
  double length_;
};

struct DyadicArc {
  int generation = 0;
  std::uint64_t index = 0;

  DyadicArc() = default;
  DyadicArc(int n, std::uint64_t k);

  static DyadicArc containing(Angle x, int n);

  double left() const;
  double length() const;
  double right() const { return left() + length(); }
  Arc arc() const { return Arc(Angle(left()), length()); }
  bool contains(Angle x) const;
  DyadicArc child(int which) const { return {generation + 1, 2 * index + static_cast<std::uint64_t>(which)}; }
  DyadicArc parent() const { return {generation - 1, index / 2}; }
  // True when this arc is a (non-strict) descendant of `a`.
  bool inside(const DyadicArc& a) const;

  friend bool operator==(const DyadicArc&, const DyadicArc&) = default;
  friend bool operator<(const DyadicArc& a, const DyadicArc& b) {
    return a.generation != b.generation ? a.generation < b.generation : a.index < b.index;
  }
};

struct Atom {
  Angle position;
  double mass = 0.0;
};

class AtomicMeasure {
 public:
  AtomicMeasure() = default;
  // Sorts by position, merges coincident atoms and drops zero masses.
  // Throws RangeError on negative or non-finite masses.
  explicit AtomicMeasure(std::vector<Atom> atoms);

  std::span<const Atom> atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  bool empty() const { return atoms_.empty(); }
  const Atom& operator[](std::size_t i) const { return atoms_[i]; }

  double total_mass() const;
  double mass_in(const Arc& I) const;
  double mass_in(const DyadicArc& I) const;
  double mass_of_range(std::size_t lo, std::size_t hi) const;

  // Index range [lo, hi) of atoms with position in [a, b), 0 <= a <= b <= 1.
  std::pair<std::size_t, std::size_t> index_range(double a, double b) const;
  std::pair<std::size_t, std::size_t> index_range(const DyadicArc& I) const;

  friend bool operator==(const AtomicMeasure& a, const AtomicMeasure& b);

 private:
  std::vector<Atom> atoms_;
};

double measure_of_arc(const AtomicMeasure& mu, const Arc& I);
AtomicMeasure restrict_and_scale(const AtomicMeasure& mu, const Arc& I, double c);
AtomicMeasure scaled(const AtomicMeasure& mu, double c);
AtomicMeasure operator+(const AtomicMeasure& a, const AtomicMeasure& b);

// Closed subset of the circle: the complement of the open gaps. Residual
// arcs are closed arcs of the set that have not been subdivided further.
class ClosedSet {
 public:
  ClosedSet() = default;  // the empty set
  ClosedSet(std::vector<Arc> gaps, std::vector<Arc> residual);

  static ClosedSet full_circle();
  static ClosedSet from_points(std::vector<Angle> points);
  static ClosedSet support_of(const AtomicMeasure& mu);

  std::span<const Arc> gaps() const { return gaps_; }
  std::span<const Arc> residual() const { return residual_; }
  bool is_empty() const { return gaps_.empty() && residual_.empty(); }
  bool has_residual() const { return !residual_.empty(); }
  double residual_length() const;
  double max_residual_length() const;

  bool contains(Angle x) const;
  // Whether the closed interval [a, b] (0 <= a < b <= 1) meets the set.
  bool closed_arc_meets(double a, double b) const;
  bool meets(const DyadicArc& I) const { return closed_arc_meets(I.left(), I.right()); }

 private:
  bool inside_some_gap(double a, double b) const;

  std::vector<Arc> gaps_;
  std::vector<Arc> residual_;
};

std::vector<DyadicArc> dyadic_arcs_meeting(const ClosedSet& E, int n);

// Per-generation counts of dyadic arcs meeting E for n = 0..depth. Counting
// switches to the doubling upper bound once a level exceeds `enumeration_limit`
// arcs; `exact_through` is the last exactly enumerated generation.
struct MeetingCensus {
  std::vector<double> counts;
  int exact_through = 0;
};
MeetingCensus dyadic_meeting_census(const ClosedSet& E, int depth, std::size_t enumeration_limit = 1u << 22);

struct WhitneyPiece {
  Arc arc;
  int level = 0;  // signed: negative toward the left end, 0 for the centre
  bool remainder = false;
};

// Tiles J by a centre arc of length |J|/2, then arcs of length |J|/2^{k+2}
// on each side for k = 1..depth-1, and two remainder edge arcs of length
// |J|/2^{depth+1}. Pieces are returned in angular order.
std::vector<WhitneyPiece> whitney_decompose(const Arc& J, int depth, double min_length = 0x1p-60);

}  // namespace carleson
