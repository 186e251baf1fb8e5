#include "carleson/bc_norm.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "carleson/error.hpp"
#include "carleson/quadrature.hpp"
#include "carleson/summation.hpp"

namespace carleson {

namespace {

double resolution_scale(std::optional<int> resolution) {
  if (!resolution) return 0.0;
  if (*resolution < 0 || *resolution > kGenerationCap) throw RangeError("resolution outside [0, 48]");
  return std::ldexp(1.0, -*resolution);
}

// ∫_a^b φ₁ over one shell.
QuadResult shell_integral(const GaugeFunction& g, double a, double b) {
  return integrate_log([&](double s) { return g.phi1(s); }, a, b, 1e-13);
}

}  // namespace

ArcSum arc_sum(const ClosedSet& E, const GaugeFunction& g, std::optional<int> resolution) {
  const double h = resolution_scale(resolution);
  auto term = [&](double L) { return L * g.phi1(std::max(L, h)); };
  ArcSum out;
  out.value = pairwise_sum(E.gaps().begin(), E.gaps().end(), [&](const Arc& J) { return term(J.length()); });
  out.residual_present = E.has_residual();
  out.with_residual =
      out.value + pairwise_sum(E.residual().begin(), E.residual().end(), [&](const Arc& J) { return term(J.length()); });
  return out;
}

Estimate integral_phi1(const GaugeFunction& g, double lo, double hi) {
  if (lo < 0.0 || hi < lo) throw RangeError("integral_phi1 needs 0 <= lo <= hi");
  Estimate e;
  if (lo == hi) return e;
  std::vector<double> shells;
  if (lo > 0.0) {
    double b = hi;
    while (b > lo) {
      const double a = std::max(lo, 0.5 * b);
      auto q = shell_integral(g, a, b);
      e.quadrature_ok = e.quadrature_ok && q.converged;
      shells.push_back(q.value);
      b = a;
    }
    e.value = pairwise_sum(shells);
    return e;
  }
  double b = hi;
  double sum = 0.0;
  for (int k = 0; k < 4000; ++k) {
    const double a = 0.5 * b;
    auto q = shell_integral(g, a, b);
    e.quadrature_ok = e.quadrature_ok && q.converged;
    shells.push_back(q.value);
    sum += q.value;
    b = a;
    if (k >= 4 && q.value <= 1e-16 * sum) break;
  }
  e.value = pairwise_sum(shells);
  const std::size_t n = shells.size();
  const double r = shells[n - 1] / shells[n - 2];
  if (r >= 1.0) {
    e.diverging = true;
    e.tail = HUGE_VAL;
  } else {
    e.tail = shells[n - 1] * r / (1.0 - r);
  }
  return e;
}

Estimate distance_integral(const ClosedSet& E, const GaugeFunction& g, std::optional<int> resolution) {
  const double h = resolution_scale(resolution);
  Estimate out;
  std::map<double, double> memo;  // gap length -> contribution
  std::vector<double> terms;
  terms.reserve(E.gaps().size());
  for (const auto& J : E.gaps()) {
    const double L = J.length();
    auto it = memo.find(L);
    if (it == memo.end()) {
      double v;
      if (h > 0.0 && 0.5 * L <= h) {
        v = L * g.phi1(h);
      } else if (h > 0.0) {
        auto q = integral_phi1(g, h, 0.5 * L);
        out.quadrature_ok = out.quadrature_ok && q.quadrature_ok;
        v = 2.0 * (h * g.phi1(h) + q.value);
      } else {
        auto q = integral_phi1(g, 0.0, 0.5 * L);
        out.quadrature_ok = out.quadrature_ok && q.quadrature_ok;
        out.diverging = out.diverging || q.diverging;
        v = 2.0 * (q.value + q.tail);
      }
      it = memo.emplace(L, v).first;
    }
    terms.push_back(it->second);
  }
  out.value = pairwise_sum(terms);
  return out;
}

namespace {

DyadicSeries dyadic_series(const ClosedSet& E, int depth, const std::function<double(double)>& per_arc) {
  if (depth < 0 || depth > kGenerationCap) throw RangeError("depth outside [0, 48]");
  DyadicSeries s;
  auto census = dyadic_meeting_census(E, depth);
  s.counts = census.counts;
  for (int n = 0; n <= depth; ++n) {
    const double c = census.counts[static_cast<std::size_t>(n)];
    s.terms.push_back(c > 0.0 ? c * per_arc(std::ldexp(1.0, -n)) : 0.0);
  }
  s.value = pairwise_sum(s.terms);
  auto verdict = classify_series(s.terms);
  s.diverging = verdict.diverges;
  s.tail = verdict.tail;
  return s;
}

}  // namespace

DyadicSeries dyadic_arc_sum(const ClosedSet& E, const GaugeFunction& g, int depth) {
  return dyadic_series(E, depth, [&](double L) { return L * L / g.lambda(L); });
}

DyadicSeries privalov_integral(const ClosedSet& E, const GaugeFunction& g, int depth) {
  return dyadic_series(E, depth, [&](double L) { return g.top_box_weight(L); });
}

ComparabilityReport comparability_report(const ClosedSet& E, const GaugeFunction& g, int depth) {
  ComparabilityReport r;
  r.depth = depth;
  r.gauge = g.name();
  const double h = resolution_scale(depth);
  if (E.max_residual_length() > h) {
    r.infinite = true;
    r.arc_sum = r.distance_integral = r.dyadic_arc_sum = r.privalov_integral = HUGE_VAL;
    r.max_ratio = NAN;
    return r;
  }
  r.arc_sum = arc_sum(E, g, depth).value;
  r.distance_integral = distance_integral(E, g, depth).value;
  auto c = dyadic_arc_sum(E, g, depth);
  auto d = privalov_integral(E, g, depth);
  r.dyadic_arc_sum = c.value;
  r.privalov_integral = d.value;
  r.dyadic_tail = c.tail;
  r.privalov_tail = d.tail;
  const double q[4] = {r.arc_sum, r.distance_integral, r.dyadic_arc_sum, r.privalov_integral};
  r.max_ratio = 0.0;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      r.ratios[i][j] = q[i] / q[j];
      if (i != j) r.max_ratio = std::max(r.max_ratio, r.ratios[i][j]);
    }
  }
  if (!std::isfinite(r.max_ratio)) r.max_ratio = HUGE_VAL;
  return r;
}

CriterionResult diffuse_criterion(const GaugeFunction& g, const std::function<double(double)>& w, double eps_min) {
  if (!(eps_min > 0.0 && eps_min < 0.25)) throw RangeError("eps_min must lie in (0, 1/4)");
  double prev = 0.0;
  for (double eps = 0.5; eps >= eps_min; eps *= std::exp2(-0.25)) {
    const double wv = w(eps);
    if (!(wv > 0.0) || !std::isfinite(wv)) throw RangeError("modulus must be positive and finite");
    const double r = wv / eps;
    if (!(r > prev)) throw RangeError("w(eps)/eps must be strictly decreasing");
    prev = r;
  }
  CriterionResult out;
  auto f = [&](double e) { return e / (g.lambda(e) * w(e)); };
  for (double b = 0.5; 0.5 * b >= eps_min * (1 - 1e-12); b *= 0.5) {
    const double a = 0.5 * b;
    out.shells.push_back(integrate_log(f, a, b, 1e-12).value);
  }
  out.verdict = classify_series(out.shells);
  out.diverges = out.verdict.diverges;
  out.value = out.diverges ? HUGE_VAL : out.verdict.partial + out.verdict.tail;
  return out;
}

CriterionResult local_criterion(const AtomicMeasure& mu, Angle x, const GaugeFunction& g) {
  CriterionResult out;
  std::vector<std::pair<double, double>> dist;  // (distance, mass)
  for (const auto& a : mu.atoms()) dist.emplace_back(circular_distance(x, a.position), a.mass);
  std::sort(dist.begin(), dist.end());
  if (dist.empty() || dist.front().first > 0.0) {
    out.diverges = true;
    out.value = HUGE_VAL;
    return out;
  }
  double mass = 0.0;
  std::size_t i = 0;
  std::vector<double> pieces;
  while (i < dist.size()) {
    const double d = dist[i].first;
    while (i < dist.size() && dist[i].first == d) mass += dist[i++].second;
    const double next = i < dist.size() ? dist[i].first : 1.0;
    pieces.push_back(g.eps_over_lambda_integral(d, next) / mass);
    out.shells.push_back(pieces.back());
  }
  out.value = pairwise_sum(pieces);
  return out;
}

}  // namespace carleson
