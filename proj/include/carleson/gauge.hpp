#pragma once

// Gauge functions φ(t) = t·φ₁(t), φ₁(t) = ∫_t^1 ds/λ(s), and φ-dyadic grids.

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace carleson {

enum class GaugeKind { entropy_log, power_alpha, custom_lambda };

// Power gauges come in two flavours: the nominal φ(t) = t^α, and the variant
// φ(t) = t^α − t for which φ₁ is exactly ∫_t^1 ds/λ(s) with λ = t^{2−α}/(1−α).
enum class PhiVariant { nominal, identity };

struct CustomTable;

class GaugeFunction {
 public:
  static GaugeFunction entropy();
  static GaugeFunction power(double alpha, PhiVariant variant = PhiVariant::nominal);
  // Tabulated λ, resampled to 64 log-spaced knots per decade.
  static GaugeFunction custom(const std::vector<double>& t, const std::vector<double>& lambda);
  static GaugeFunction custom(const std::function<double(double)>& lambda, double t_min);

  GaugeKind kind() const { return kind_; }
  double alpha() const { return alpha_; }
  PhiVariant variant() const { return variant_; }
  std::string name() const;

  double phi(double t) const;
  double phi1(double t) const;
  double lambda(double t) const;
  // ∫_lo^hi dt/λ(t).
  double lambda_integral(double lo, double hi) const;
  // ∫_lo^hi t/λ(t) dt.
  double eps_over_lambda_integral(double lo, double hi) const;
  // Flat-area integral of 1/λ(1−|z|) over the top half of the Carleson box
  // of an arc of length `side`: side·∫_{side/2}^{side} dt/λ(t).
  double top_box_weight(double side) const { return side * lambda_integral(0.5 * side, side); }
  // Right end of the interval [0, t*] on which φ is increasing.
  double increasing_up_to() const;

 private:
  GaugeKind kind_ = GaugeKind::entropy_log;
  double alpha_ = 0.0;
  PhiVariant variant_ = PhiVariant::nominal;
  std::shared_ptr<const CustomTable> table_;
};

struct PhiDyadicGrid {
  std::vector<int> generations;  // n_1 < n_2 < ...
  double c_lo = 0.0;
  double c_hi = 0.0;
  // max_j φ₁(2^{-n_{j+1}}) / φ₁(2^{-n_j}).
  double grid_constant = 0.0;
};

PhiDyadicGrid build_grid(const GaugeFunction& g, int depth);
// Largest depth build_grid accepts under the generation cap.
int max_grid_depth(const GaugeFunction& g);

struct RegularityCeilings {
  double doubling = 4.0;
  double geometric = 1e3;
};

struct RegularityReport {
  double g2_lo = 0.0;  // min over samples of λ(θt)/λ(t), θ ∈ [1,2]
  double g2_hi = 0.0;  // max over the same samples
  double g3 = 0.0;     // max over sampled t of Σ_k φ(2^{-k}t)/φ(t)
  double t_star = 0.0;
  std::vector<std::string> violations;
};

RegularityReport check_regularity(const GaugeFunction& g, const RegularityCeilings& ceilings = {});

}  // namespace carleson
