#pragma once

#include <span>
#include <string>
#include <vector>

namespace carleson {

// Verdict on a non-negative series from its leading terms.
struct SeriesVerdict {
  double partial = 0.0;
  double tail = 0.0;  // extrapolated remainder when convergent, +inf otherwise
  bool diverges = false;
  double ratio = 0.0;     // mean term ratio over the final window
  double exponent = 0.0;  // fitted k^{-γ} decay when the ratio regime is inconclusive
  std::string rule;
};

// Geometric decay with ratio <= 0.95, or a stable ratio below 1, counts as
// convergent. Ratios near 1 that keep drifting upward are fitted to k^{-γ}
// and judged convergent only for γ > 1.25. Partial sums beyond 10^6 times the
// first non-zero term always count as divergent.
SeriesVerdict classify_series(std::span<const double> terms);

// Windowed check used by the per-measure chain flags: compares the mass of
// the last quarter of the resolved terms to the quarter before it.
bool windowed_divergence(std::span<const double> terms, std::size_t resolved, double tolerance = 0.0);

// Least-squares slope of y against x.
double fit_slope(std::span<const double> x, std::span<const double> y);

}  // namespace carleson
