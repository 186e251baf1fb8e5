#include "carleson/series.hpp"

#include <algorithm>
#include <cmath>

#include "carleson/summation.hpp"

namespace carleson {

double fit_slope(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = std::min(x.size(), y.size());
  if (n < 2) return 0.0;
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxx > 0.0 ? sxy / sxx : 0.0;
}

SeriesVerdict classify_series(std::span<const double> terms) {
  SeriesVerdict v;
  v.partial = pairwise_sum(terms);
  const std::size_t n = terms.size();
  double first = 0.0;
  for (double t : terms) {
    if (t > 0.0) {
      first = t;
      break;
    }
  }
  if (first == 0.0) {
    v.rule = "all-zero";
    return v;
  }
  if (!std::isfinite(v.partial) || v.partial > 1e6 * first) {
    v.diverges = true;
    v.tail = HUGE_VAL;
    v.rule = "runaway";
    return v;
  }
  // Trailing zeros: the series has stopped.
  if (terms.back() == 0.0) {
    v.rule = "terminated";
    return v;
  }
  const std::size_t w = std::min<std::size_t>(10, n - 1);
  if (w == 0 || terms[n - 1 - w] <= 0.0) {
    v.rule = "too-short";
    return v;
  }
  v.ratio = std::pow(terms[n - 1] / terms[n - 1 - w], 1.0 / static_cast<double>(w));
  if (v.ratio <= 0.95) {
    v.tail = terms[n - 1] * v.ratio / (1.0 - v.ratio);
    v.rule = "geometric";
    return v;
  }
  if (v.ratio > 1.0 + 1e-9) {
    v.diverges = true;
    v.tail = HUGE_VAL;
    v.rule = "growing";
    return v;
  }
  // Ratio close to 1: distinguish slow geometric decay from power decay by
  // whether the ratio is still drifting toward 1.
  const std::size_t h = w / 2;
  const double r_early = std::pow(terms[n - 1 - h] / terms[n - 1 - w], 1.0 / static_cast<double>(w - h));
  const double r_late = std::pow(terms[n - 1] / terms[n - 1 - h], 1.0 / static_cast<double>(h));
  if (v.ratio < 1.0 - 1e-6 && std::abs(r_late - r_early) < 1e-3) {
    v.tail = terms[n - 1] * v.ratio / (1.0 - v.ratio);
    v.rule = "slow-geometric";
    return v;
  }
  std::vector<double> lx, ly;
  for (std::size_t k = n / 2; k < n; ++k) {
    if (terms[k] <= 0.0) continue;
    lx.push_back(std::log(static_cast<double>(k + 1)));
    ly.push_back(std::log(terms[k]));
  }
  v.exponent = -fit_slope(lx, ly);
  if (v.exponent > 1.25) {
    v.tail = terms[n - 1] * static_cast<double>(n) / (v.exponent - 1.0);
    v.rule = "power-decay";
    return v;
  }
  v.diverges = true;
  v.tail = HUGE_VAL;
  v.rule = "slow-decay";
  return v;
}

bool windowed_divergence(std::span<const double> terms, std::size_t resolved, double tolerance) {
  resolved = std::min(resolved, terms.size());
  if (resolved < 4) return false;
  const std::size_t q = resolved / 4;
  double w1 = 0.0, w2 = 0.0;
  for (std::size_t k = resolved - 2 * q; k < resolved - q; ++k) w1 += terms[k];
  for (std::size_t k = resolved - q; k < resolved; ++k) w2 += terms[k];
  if (w2 <= 0.0) return false;
  return w2 >= w1 * (1.0 - tolerance);
}

}  // namespace carleson
