#pragma once

// Singular inner functions S_μ of atomic measures: Poisson extension, the
// Ahern–Clark boundary derivative, and the norms used by the chain tests.

#include <complex>
#include <string>
#include <vector>

#include "carleson/circle.hpp"

namespace carleson {

// Point of the open disk, stored in polar form with depth t = 1 − |z| so
// that points close to the circle keep full relative precision.
class DiskPoint {
 public:
  static DiskPoint polar(Angle theta, double depth);
  static DiskPoint cartesian(double re, double im);

  Angle angle() const { return theta_; }
  double depth() const { return depth_; }
  double radius() const { return 1.0 - depth_; }
  double re() const;
  double im() const;
  std::complex<double> z() const { return {re(), im()}; }

 private:
  Angle theta_;
  double depth_ = 1.0;
};

double poisson(const AtomicMeasure& mu, const DiskPoint& z);
// Σ m (ζ+z)/(ζ−z).
std::complex<double> herglotz(const AtomicMeasure& mu, const DiskPoint& z);
std::complex<double> s_mu(const AtomicMeasure& mu, const DiskPoint& z);
// h = S'/S = −Σ 2mζ/(ζ−z)².
std::complex<double> s_mu_log_derivative(const AtomicMeasure& mu, const DiskPoint& z);
double s_mu_deriv_abs(const AtomicMeasure& mu, const DiskPoint& z);
// 2Σ m/|ζ − e^{iθ}|², +inf when θ carries an atom.
double s_mu_deriv_boundary(const AtomicMeasure& mu, Angle theta);

struct NormReport {
  double value = 0.0;
  double tail = 0.0;
  bool diverges = false;
  std::string method;
  std::vector<double> per_gap;      // aligned with the gaps of the set, when gap-based
  std::vector<double> per_level;    // per dyadic generation, when sweep-based
  int depth = 0;
  bool quadrature_ok = true;
};

struct QuadratureOptions {
  int whitney_depth = 40;
  double rel_tol = 1e-9;
};

// ∫ over the gaps of E of |S'_μ(e^{iθ})|^p dθ (θ in turns). 0 < p < 1/2.
NormReport hp_norm_boundary(const AtomicMeasure& mu, const ClosedSet& E, double p, const QuadratureOptions& opt = {});
// Σ_J P_μ(z_J)^p |J|^{1−p}, z_J at depth |J|/2 over the midpoint of J.
NormReport hp_test_sum(const AtomicMeasure& mu, const ClosedSet& E, double p);
// ∫ over the gaps of E of log⁺|S'_μ(e^{iθ})| dθ.
NormReport nevanlinna_norm(const AtomicMeasure& mu, const ClosedSet& E, const QuadratureOptions& opt = {});

struct HoelderFactors {
  double delta = 0.0;     // δ = qp/(q−p)
  double factor_a = 0.0;  // (Σ u(z_J)^δ |J|)^{p/δ}
  double factor_b = 0.0;  // (Σ |J|^{1−q})^{(δ−p)/δ}
  double product = 0.0;
  double hp_test = 0.0;
};

// Requires q >= p/(1−p); at equality δ = 1.
HoelderFactors cullen_hoelder_factors(const AtomicMeasure& mu, const ClosedSet& E, double p, double q);

struct SweepOptions {
  int depth = 30;
  double window = 4.0;  // near-atom window, in units of the arc length
};

struct SweepResult {
  std::vector<double> terms;        // per generation, centre classification
  std::vector<double> inner_terms;  // Harnack-band lower bracket (area only)
  std::vector<double> outer_terms;  // Harnack-band upper bracket (area only)
  double value = 0.0;               // partial sum plus extrapolated tail
  double partial = 0.0;
  double inner = 0.0;
  double outer = 0.0;
  double tail = 0.0;
  double kappa = 1.0;
  bool diverges = false;
  std::size_t boxes = 0;
  int depth = 0;
};

// ∫_{P_μ > threshold} dA/(1−|z|)^σ with the flat area element (turns × depth).
SweepResult area_sweep(const AtomicMeasure& mu, double threshold, double sigma, const SweepOptions& opt = {});
// ∫ |S'_μ|^q (1−|z|²)^{q−1−p} dA with the same conventions. 1 <= q <= 2.
SweepResult besov_sweep(const AtomicMeasure& mu, double p, double q, const SweepOptions& opt = {});

NormReport besov_integral(const AtomicMeasure& mu, double p, double q, int depth = 30);

struct RasterSample {
  double theta = 0.0;
  double r = 0.0;
  double value = 0.0;
};
// |S_μ| on a polar lattice: n_theta equally spaced angles times n_r radii
// whose depths 1 − r are log-spaced from 1 down to min_depth.
std::vector<RasterSample> modulus_raster(const AtomicMeasure& mu, int n_theta, int n_r, double min_depth);

}  // namespace carleson
