#pragma once

#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace carleson {

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  bool converged = true;
};

// Adaptive 15-point Gauss–Kronrod on [a, b]; rel_tol is relative to ∫|f|.
template <class F>
QuadResult adaptive_integrate(F f, double a, double b, double rel_tol = 1e-12, unsigned max_depth = 20) {
  QuadResult r;
  if (a == b) return r;
  double l1 = 0.0;
  r.value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, max_depth, rel_tol, &r.error, &l1);
  r.converged = r.error <= std::max(rel_tol * l1, 1e-300);
  return r;
}

// ∫_lo^hi f(t) dt for 0 < lo < hi, integrated in the variable x = log t.
template <class F>
QuadResult integrate_log(F f, double lo, double hi, double rel_tol = 1e-12, unsigned max_depth = 20) {
  auto g = [&](double x) {
    const double t = std::exp(x);
    return f(t) * t;
  };
  return adaptive_integrate(g, std::log(lo), std::log(hi), rel_tol, max_depth);
}

}  // namespace carleson
