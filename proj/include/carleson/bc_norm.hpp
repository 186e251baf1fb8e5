#pragma once

// The four comparable Beurling–Carleson quantities of a closed set, and the
// diffuse and local integral criteria.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "carleson/circle.hpp"
#include "carleson/gauge.hpp"
#include "carleson/series.hpp"

namespace carleson {

// With `resolution` set, arc lengths below h = 2^{-resolution} are read at
// scale h (φ₁ evaluated at max(·, h)), matching the dyadic sums cut at the
// same generation.
struct ArcSum {
  double value = 0.0;          // enumerated gaps only
  double with_residual = 0.0;  // plus φ of every residual arc
  bool residual_present = false;
};
ArcSum arc_sum(const ClosedSet& E, const GaugeFunction& g, std::optional<int> resolution = {});

struct Estimate {
  double value = 0.0;
  double tail = 0.0;
  bool diverging = false;
  bool quadrature_ok = true;
};

// ∫_lo^hi φ₁(s) ds by adaptive quadrature; lo may be 0.
Estimate integral_phi1(const GaugeFunction& g, double lo, double hi);

// Σ over gaps of 2∫_0^{|J|/2} φ₁(max(s, h)) ds.
Estimate distance_integral(const ClosedSet& E, const GaugeFunction& g, std::optional<int> resolution = {});

struct DyadicSeries {
  std::vector<double> terms;  // per generation 0..depth
  std::vector<double> counts;
  double value = 0.0;
  double tail = 0.0;
  bool diverging = false;
};

// Σ |I|²/λ(|I|) over dyadic I meeting E, generation <= depth.
DyadicSeries dyadic_arc_sum(const ClosedSet& E, const GaugeFunction& g, int depth);
// Σ over the same arcs of the flat-area top-box integral of 1/λ(1−|z|).
DyadicSeries privalov_integral(const ClosedSet& E, const GaugeFunction& g, int depth);

struct ComparabilityReport {
  double arc_sum = 0.0;
  double distance_integral = 0.0;
  double dyadic_arc_sum = 0.0;
  double privalov_integral = 0.0;
  double dyadic_tail = 0.0;
  double privalov_tail = 0.0;
  bool infinite = false;  // E has positive length at this resolution
  int depth = 0;
  // ratios[i][j] = quantity i / quantity j in the order (a), (b), (c), (d).
  double ratios[4][4] = {};
  double max_ratio = 0.0;  // K: the largest ratio in either direction
  std::string gauge;
};

ComparabilityReport comparability_report(const ClosedSet& E, const GaugeFunction& g, int depth);

struct CriterionResult {
  double value = 0.0;
  bool diverges = false;
  SeriesVerdict verdict;
  std::vector<double> shells;
};

// ∫_0^{1/2} ε/(λ(ε) w(ε)) dε over dyadic shells down to eps_min.
// Throws RangeError unless w(ε)/ε is strictly decreasing on the sample grid.
CriterionResult diffuse_criterion(const GaugeFunction& g, const std::function<double(double)>& w,
                                  double eps_min = 0x1p-40);

// ∫_0^1 ε/(λ(ε) μ(x,ε)) dε with μ(x,ε) the mass of [x−ε, x+ε), integrated
// exactly between consecutive atom distances.
CriterionResult local_criterion(const AtomicMeasure& mu, Angle x, const GaugeFunction& g);

}  // namespace carleson
