#include "carleson/pde.hpp"

#include <algorithm>
#include <array>
#include <boost/numeric/odeint.hpp>
#include <cmath>

#include "carleson/error.hpp"
#include "carleson/inner.hpp"
#include "carleson/summation.hpp"

namespace carleson {

namespace odeint = boost::numeric::odeint;
using State = std::array<double, 2>;

PdeParams params_of_p(double p) {
  if (!(p > 1.0) || !std::isfinite(p)) throw RangeError("p must exceed 1");
  PdeParams out;
  out.p = p;
  out.alpha = (p - 3.0) / (p - 1.0);
  out.C_alpha = std::pow(2.0 * (p + 1.0) / ((p - 1.0) * (p - 1.0)), 1.0 / (p - 1.0));
  return out;
}

double half_plane_residual(const PdeParams& params, double y) {
  if (!(y > 0.0)) throw RangeError("half-plane height must be positive");
  const double a = params.alpha, C = params.C_alpha, p = params.p;
  // Work with logarithms: both sides are C^k y^{power} with large powers.
  const double log_lhs = std::log(C * (a - 1.0) * (a - 2.0)) + (a - 3.0) * std::log(y);
  const double log_rhs = p * std::log(C) + p * (a - 1.0) * std::log(y);
  return std::abs(std::expm1(log_lhs - log_rhs));
}

namespace {

constexpr double kTol = 1e-12;
constexpr double kBlowup = 1e12;

// Natural radial scale of the solution with u(0) = u0.
double length_scale(double p, double u0) { return std::pow(u0, -(p - 1.0) / 2.0); }

void check_shot(double p, double u0) {
  if (!(p > 1.0) || !std::isfinite(p)) throw RangeError("p must exceed 1");
  if (!(u0 > 0.0) || !std::isfinite(u0)) throw RangeError("u(0) must be positive");
}

// Series start away from the coordinate singularity at r = 0.
std::pair<double, State> series_start(double p, double u0) {
  const double r0 = 1e-6 * length_scale(p, u0);
  const double up = std::pow(u0, p);
  return {r0, State{u0 + up * r0 * r0 / 4.0, up * r0 / 2.0}};
}

struct RadialSystem {
  double p;
  void operator()(const State& s, State& ds, double r) const {
    ds[0] = s[1];
    ds[1] = std::pow(std::max(s[0], 0.0), p) - s[1] / r;
  }
};

// Same equation with t = log u as the variable and state (r, log u′).
struct TailSystem {
  double p;
  void operator()(const State& s, State& ds, double t) const {
    const double drdt = std::exp(t - s[1]);
    ds[0] = drdt;
    ds[1] = std::exp((p + 1.0) * t - 2.0 * s[1]) - drdt / s[0];
  }
};

}  // namespace

double blowup_radius(double p, double u0) {
  check_shot(p, u0);
  auto [r, s] = series_start(p, u0);
  const double scale = length_scale(p, u0);
  // Phase one in r until u has grown enough for log u to be a good variable.
  auto stepper = odeint::make_dense_output(kTol, kTol, odeint::runge_kutta_dopri5<State>());
  stepper.initialize(s, r, 1e-3 * scale);
  const double switch_u = 4.0 * u0;
  int guard = 0;
  while (stepper.current_state()[0] < switch_u) {
    stepper.do_step(RadialSystem{p});
    if (++guard > 10000000 || !std::isfinite(stepper.current_state()[0])) {
      throw NumericError("radial shooting did not reach the blow-up regime");
    }
  }
  // Back up to exactly u = switch_u inside the last step.
  double lo = stepper.previous_time(), hi = stepper.current_time();
  State at{};
  for (int k = 0; k < 200 && hi - lo > 1e-16 * hi; ++k) {
    const double mid = 0.5 * (lo + hi);
    stepper.calc_state(mid, at);
    (at[0] < switch_u ? lo : hi) = mid;
  }
  stepper.calc_state(hi, at);

  // Phase two in t = log u. Past the detection level u > 1e12 keep going
  // until what is left of the radius is below rounding.
  const double t0 = std::log(at[0]);
  State tail{hi, std::log(at[1])};
  const double rate = (p - 1.0) / 2.0;
  const double remainder_coef = std::sqrt((p + 1.0) / 2.0) / rate;
  double t_end = std::log(kBlowup);
  // Energy bound for the rest: ∫_U^∞ du/√(2u^{p+1}/(p+1)) = coef · U^{−(p−1)/2}.
  const double needed = (std::log(remainder_coef) - std::log(1e-16 * scale)) / rate;
  t_end = std::clamp(needed, t_end, 2e4);
  if (t_end > t0) {
    odeint::integrate_adaptive(odeint::make_controlled(kTol, kTol, odeint::runge_kutta_dopri5<State>()),
                               TailSystem{p}, tail, t0, t_end, 0.01);
  }
  if (!std::isfinite(tail[0])) throw NumericError("radial shooting lost accuracy near blow-up");
  return tail[0] + remainder_coef * std::exp(-rate * std::max(t_end, t0));
}

std::vector<double> radial_profile(double p, double u0, const std::vector<double>& r) {
  check_shot(p, u0);
  std::vector<std::size_t> order(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (!(r[i] >= 0.0) || !std::isfinite(r[i])) throw RangeError("radii must be finite and non-negative");
    order[i] = i;
  }
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return r[a] < r[b]; });
  std::vector<double> u(r.size(), 0.0);
  auto [r0, s] = series_start(p, u0);
  std::size_t k = 0;
  for (; k < order.size() && r[order[k]] <= r0; ++k) {
    const double x = r[order[k]];
    u[order[k]] = u0 + std::pow(u0, p) * x * x / 4.0;
  }
  if (k == order.size()) return u;
  auto stepper = odeint::make_dense_output(kTol, kTol, odeint::runge_kutta_dopri5<State>());
  stepper.initialize(s, r0, 1e-3 * length_scale(p, u0));
  State at{};
  for (; k < order.size(); ++k) {
    const double target = r[order[k]];
    while (stepper.current_time() < target) {
      stepper.do_step(RadialSystem{p});
      if (!std::isfinite(stepper.current_state()[0])) {
        throw RangeError("radius beyond the blow-up radius of this solution");
      }
    }
    stepper.calc_state(target, at);
    u[order[k]] = at[0];
  }
  return u;
}

RadialSolution maximal_solution_radial(double p, const std::vector<double>& r_grid) {
  RadialSolution out;
  out.params = params_of_p(p);
  for (double r : r_grid) {
    if (!(r >= 0.0 && r < 1.0)) throw RangeError("sample radii must lie in [0, 1)");
  }
  // Blow-up radius decreases in u(0): bracket on a log scale, then bisect.
  double lo = 1.0, hi = 1.0;
  double R = blowup_radius(p, 1.0);
  int guard = 0;
  if (R > 1.0) {
    while (R > 1.0) {
      lo = hi;
      hi *= 2.0;
      R = blowup_radius(p, hi);
      if (++guard > 400) throw NumericError("shooting bracket failure");
    }
  } else {
    while (R <= 1.0) {
      hi = lo;
      lo *= 0.5;
      R = blowup_radius(p, lo);
      if (++guard > 400) throw NumericError("shooting bracket failure");
    }
  }
  double a = std::sqrt(lo * hi);
  R = blowup_radius(p, a);
  while (std::abs(R - 1.0) > 1e-8) {
    (R > 1.0 ? lo : hi) = a;
    a = std::sqrt(lo * hi);
    R = blowup_radius(p, a);
    if (++out.bisections > 200) throw NumericError("shooting bisection did not reach the unit radius");
  }
  out.u0 = a;
  out.blowup = R;
  for (double r : r_grid) {
    if (!(r < R)) throw RangeError("sample radius beyond the computed blow-up radius");
  }
  out.r = r_grid;
  out.u = radial_profile(p, a, r_grid);
  out.normalized.resize(r_grid.size());
  for (std::size_t i = 0; i < r_grid.size(); ++i) {
    out.normalized[i] = out.u[i] * std::pow(1.0 - r_grid[i], 1.0 - out.params.alpha);
  }
  return out;
}

double restoring_constant(double a, double alpha) {
  if (!(a > 0.0 && a <= 1.0)) throw RangeError("restoring map needs 0 < a <= 1");
  if (!(alpha > 0.0 && alpha < 1.0)) throw RangeError("restoring map needs 0 < alpha < 1");
  // log b = (α−1)(log(1 + e^L) − log 2), L = log a/(α−1) >= 0.
  const double L = std::log(a) / (alpha - 1.0);
  const double softplus = L + std::log1p(std::exp(-L));
  return std::exp((alpha - 1.0) * (softplus - std::log(2.0)));
}

RestoringTrajectory restoring_iteration(double a0, double alpha, int max_iter, double tol) {
  if (!(a0 > 0.0 && a0 <= 1.0)) throw RangeError("restoring iteration needs 0 < a0 <= 1");
  if (!(tol > 0.0)) throw RangeError("tolerance must be positive");
  if (max_iter < 0) throw RangeError("iteration cap must be non-negative");
  RestoringTrajectory t;
  t.values.push_back(a0);
  double a = a0;
  while (1.0 - a >= tol && t.iterations < max_iter) {
    const double b = restoring_constant(a, alpha);
    if (b < a) t.monotone = false;
    t.values.push_back(b);
    a = b;
    ++t.iterations;
  }
  t.converged = 1.0 - a < tol;
  return t;
}

void validate_tent_config(const PdeParams& params, const TentConfig& cfg) {
  const double a = params.alpha;
  if (!(a > 0.0 && a < 1.0)) throw RangeError("tents need alpha in (0, 1), i.e. p > 3");
  if (!(cfg.gamma > 1.0 && cfg.gamma < 1.0 / (1.0 - a))) throw RangeError("gamma must lie in (1, 1/(1-alpha))");
  if (!(cfg.psi > 0.0 && cfg.psi <= 1.0)) throw RangeError("psi must lie in (0, 1]");
  if (!(cfg.beta < a)) throw RangeError("beta must be below alpha");
}

double tent_profile(double t, double gamma) {
  if (!(t >= 0.0 && t <= 1.0)) return 0.0;
  return std::pow(4.0 * t * (1.0 - t), gamma);
}

namespace {

double gap_poisson(const AtomicMeasure& mu, const Arc& I) {
  return poisson(mu, DiskPoint::polar(I.midpoint(), 0.5 * I.length()));
}

double height(double length, double u, const PdeParams& params, const TentConfig& cfg) {
  const double capped = u > 0.0 ? std::min(length, std::pow(length, params.alpha) / u) : length;
  return cfg.psi * capped;
}

// Distance from x to the concentric half of I.
double dist_to_half(Angle x, const Arc& I) {
  const Arc half(Angle(I.left().turns() + 0.25 * I.length()), 0.5 * I.length());
  if (half.contains(x)) return 0.0;
  return std::min(circular_distance(x, half.left()), circular_distance(x, Angle(half.right())));
}

}  // namespace

std::vector<double> tent_heights(const ClosedSet& E, const AtomicMeasure& mu, const PdeParams& params,
                                 const TentConfig& cfg) {
  validate_tent_config(params, cfg);
  std::vector<double> h;
  for (const auto& I : E.gaps()) h.push_back(height(I.length(), gap_poisson(mu, I), params, cfg));
  return h;
}

Condition1 condition1_sum(const ClosedSet& E, const AtomicMeasure& mu, const PdeParams& params,
                          const TentConfig& cfg) {
  validate_tent_config(params, cfg);
  const double a = params.alpha, b = cfg.beta;
  Condition1 c;
  c.lambda = a * (1.0 - a) / (1.0 - b);
  c.inner_exponent = (a * (a - 1.0) + c.lambda) / c.lambda;
  std::vector<double> raw, f1, f2;
  for (const auto& I : E.gaps()) {
    const double L = I.length(), u = gap_poisson(mu, I);
    const double term = std::pow(L, a * a - a + 1.0) * std::pow(u, 1.0 - a);
    raw.push_back(term);
    f1.push_back(std::pow(L, b));
    f2.push_back(L * std::pow(u, (1.0 - a) / (1.0 - c.lambda)));
    const int g = std::clamp(static_cast<int>(std::floor(-std::log2(L))), 0, kGenerationCap);
    if (c.terms.size() <= static_cast<std::size_t>(g)) c.terms.resize(static_cast<std::size_t>(g) + 1, 0.0);
    c.terms[static_cast<std::size_t>(g)] += term;
  }
  c.raw_sum = pairwise_sum(raw);
  c.factor1 = std::pow(pairwise_sum(f1), c.lambda);
  c.factor2 = std::pow(pairwise_sum(f2), 1.0 - c.lambda);
  c.holder_ok = c.raw_sum <= c.factor1 * c.factor2 * (1.0 + 1e-12);
  return c;
}

double condition2_sum(const ClosedSet& E, const AtomicMeasure& mu, const PdeParams& params, const TentConfig& cfg,
                      Angle x) {
  if (!E.contains(x)) throw RangeError("the base point must lie in the closed set");
  const auto h = tent_heights(E, mu, params, cfg);
  const auto gaps = E.gaps();
  std::vector<double> terms;
  for (std::size_t i = 0; i < gaps.size(); ++i) {
    const double d = dist_to_half(x, gaps[i]);
    terms.push_back(h[i] * gaps[i].length() / (d * d));
  }
  return pairwise_sum(terms);
}

Condition2Average mu_average_condition2(const ClosedSet& E, const AtomicMeasure& mu, const PdeParams& params,
                                        const TentConfig& cfg) {
  for (const auto& atom : mu.atoms()) {
    if (!E.contains(atom.position)) throw RangeError("the measure must live on the closed set");
  }
  const auto h = tent_heights(E, mu, params, cfg);
  const auto gaps = E.gaps();
  Condition2Average out;
  std::vector<double> values, arcs;
  for (std::size_t i = 0; i < gaps.size(); ++i) {
    std::vector<double> inv;
    for (const auto& atom : mu.atoms()) {
      const double d = dist_to_half(atom.position, gaps[i]);
      inv.push_back(atom.mass / (d * d));
    }
    const double L = gaps[i].length();
    const double bracket = h[i] * std::pow(L, 1.0 - params.alpha) * pairwise_sum(inv);
    out.brackets.push_back(bracket);
    out.max_bracket = std::max(out.max_bracket, bracket);
    arcs.push_back(std::pow(L, params.alpha));
    values.push_back(arcs.back() * bracket);
  }
  out.value = pairwise_sum(values);
  out.arc_sum = pairwise_sum(arcs);
  return out;
}

}  // namespace carleson
