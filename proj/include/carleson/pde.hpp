#pragma once

// Radial maximal solutions of Δu = u^p, the scalar restoring map acting on
// half-plane profiles C·y^{α−1}, and tent sums over the gaps of a closed set.

#include <vector>

#include "carleson/circle.hpp"

namespace carleson {

struct PdeParams {
  double p = 5.0;
  double alpha = 0.5;    // (p−3)/(p−1)
  double C_alpha = 0.0;  // C^{p−1} = 2(p+1)/(p−1)²
};

PdeParams params_of_p(double p);

// Relative residual |u″ − u^p|/u^p of u(y) = C·y^{α−1} on the half-plane.
double half_plane_residual(const PdeParams& params, double y);

// Radius at which the radial solution with u(0) = u0 blows up.
double blowup_radius(double p, double u0);

// u(r) on [0, r_max] for the radial solution with u(0) = u0; every r must be
// below that solution's blow-up radius.
std::vector<double> radial_profile(double p, double u0, const std::vector<double>& r);

struct RadialSolution {
  PdeParams params;
  double u0 = 0.0;
  double blowup = 0.0;    // blow-up radius of the final shot
  int bisections = 0;
  std::vector<double> r;
  std::vector<double> u;
  std::vector<double> normalized;  // u(r)(1−r)^{1−α}
};

// Shoots on u(0) until the blow-up radius is within 1e-8 of 1.
RadialSolution maximal_solution_radial(double p, const std::vector<double>& r_grid);

// b = (1 + a^{1/(α−1)})^{α−1} / 2^{α−1}.
double restoring_constant(double a, double alpha);

struct RestoringTrajectory {
  std::vector<double> values;  // a_0, a_1, ...
  int iterations = 0;
  bool converged = false;  // 1 − a_k < tol
  bool monotone = true;
};

RestoringTrajectory restoring_iteration(double a0, double alpha, int max_iter = 100000, double tol = 1e-6);

struct TentConfig {
  double gamma = 1.5;  // profile exponent, in (1, 1/(1−α))
  double psi = 1.0;    // in (0, 1]
  double beta = 0.25;  // carrier exponent, below α
};

void validate_tent_config(const PdeParams& params, const TentConfig& cfg);

// (4t(1−t))^γ: equals 1 at t = 1/2, vanishes like t^γ and (1−t)^γ at the ends.
double tent_profile(double t, double gamma);

// ψ·min(|I|, |I|^α / u(z_I)) per gap I of E, with u the Poisson extension of
// μ at depth |I|/2 over the midpoint of I.
std::vector<double> tent_heights(const ClosedSet& E, const AtomicMeasure& mu, const PdeParams& params,
                                 const TentConfig& cfg);

struct Condition1 {
  double raw_sum = 0.0;   // Σ |I|^{α²−α+1} u(z_I)^{1−α}
  double factor1 = 0.0;   // (Σ |I|^β)^λ
  double factor2 = 0.0;   // (Σ |I| u(z_I)^{(1−α)/(1−λ)})^{1−λ}
  double lambda = 0.0;    // α(1−α)/(1−β)
  double inner_exponent = 0.0;  // (α(α−1)+λ)/λ, equal to β
  bool holder_ok = true;
  std::vector<double> terms;  // raw sum binned by gap generation
};

Condition1 condition1_sum(const ClosedSet& E, const AtomicMeasure& mu, const PdeParams& params,
                          const TentConfig& cfg);

// Σ_I h(I)|I| / dist(x, I/2)², I/2 the concentric half of I; x must lie in E.
double condition2_sum(const ClosedSet& E, const AtomicMeasure& mu, const PdeParams& params, const TentConfig& cfg,
                      Angle x);

struct Condition2Average {
  double value = 0.0;        // ∫ condition2_sum dμ = Σ_I |I|^α B_I
  double arc_sum = 0.0;      // Σ_I |I|^α
  double max_bracket = 0.0;  // max_I B_I, B_I = h(I)|I|^{1−α} ∫ dμ(x)/dist(x, I/2)²
  std::vector<double> brackets;
};

Condition2Average mu_average_condition2(const ClosedSet& E, const AtomicMeasure& mu, const PdeParams& params,
                                        const TentConfig& cfg);

}  // namespace carleson
