#include "carleson/gauge.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "carleson/circle.hpp"
#include "carleson/error.hpp"
#include "carleson/quadrature.hpp"

namespace carleson {

struct CustomTable {
  double step = std::numbers::ln10 / 64.0;
  std::vector<double> x;    // knot positions, log t; last knot is 0
  std::vector<double> ell;  // log λ at knots
  std::vector<double> cum;  // ∫_{t_i}^1 dt/λ

  double log_lambda(double lx) const {
    if (lx <= x.front()) {
      const double s = (ell[1] - ell[0]) / (x[1] - x[0]);
      return ell[0] + s * (lx - x[0]);
    }
    if (lx >= x.back()) {
      const std::size_t n = x.size();
      const double s = (ell[n - 1] - ell[n - 2]) / (x[n - 1] - x[n - 2]);
      return ell[n - 1] + s * (lx - x[n - 1]);
    }
    std::size_t i = static_cast<std::size_t>((lx - x.front()) / step);
    i = std::min(i, x.size() - 2);
    const double w = (lx - x[i]) / (x[i + 1] - x[i]);
    return ell[i] + w * (ell[i + 1] - ell[i]);
  }

  double segment(double a, double b) const {
    auto f = [this](double lx) { return std::exp(lx - log_lambda(lx)); };
    return adaptive_integrate(f, a, b, 1e-13).value;
  }

  double phi1(double t) const {
    if (t >= 1.0) return 0.0;
    const double lx = std::log(t);
    if (lx < x.front()) {
      // Below the table λ is extended as a power law with the first slope.
      const double s = (ell[1] - ell[0]) / (x[1] - x[0]);
      const double c = std::exp(-ell[0] + s * x[0]);
      double part;
      if (std::abs(1.0 - s) < 1e-14) {
        part = c * (x[0] - lx);
      } else {
        part = c * (std::exp((1.0 - s) * x[0]) - std::exp((1.0 - s) * lx)) / (1.0 - s);
      }
      return cum[0] + part;
    }
    std::size_t i = static_cast<std::size_t>((lx - x.front()) / step);
    i = std::min(i, x.size() - 2);
    return cum[i + 1] + segment(lx, x[i + 1]);
  }
};

namespace {

std::shared_ptr<CustomTable> make_table(const std::function<double(double)>& log_lambda_of_log_t, double t_min) {
  if (!(t_min > 0.0 && t_min < 1.0)) throw RangeError("custom gauge table must start inside (0,1)");
  auto tab = std::make_shared<CustomTable>();
  const auto n = static_cast<std::size_t>(std::ceil(-std::log(t_min) / tab->step)) + 1;
  for (std::size_t i = 0; i < n; ++i) tab->x.push_back(-static_cast<double>(n - 1 - i) * tab->step);
  for (double lx : tab->x) {
    const double v = log_lambda_of_log_t(lx);
    if (!std::isfinite(v)) throw RangeError("custom lambda must be positive and finite");
    tab->ell.push_back(v);
  }
  tab->cum.assign(n, 0.0);
  for (std::size_t i = n - 1; i-- > 0;) tab->cum[i] = tab->cum[i + 1] + tab->segment(tab->x[i], tab->x[i + 1]);
  return tab;
}

}  // namespace

GaugeFunction GaugeFunction::entropy() { return GaugeFunction(); }

GaugeFunction GaugeFunction::power(double alpha, PhiVariant variant) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw RangeError("power gauge exponent must lie in (0,1)");
  GaugeFunction g;
  g.kind_ = GaugeKind::power_alpha;
  g.alpha_ = alpha;
  g.variant_ = variant;
  return g;
}

GaugeFunction GaugeFunction::custom(const std::vector<double>& t, const std::vector<double>& lambda) {
  if (t.size() != lambda.size() || t.size() < 2) throw RangeError("custom lambda table needs at least two rows");
  std::vector<std::pair<double, double>> rows;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!(t[i] > 0.0 && t[i] <= 1.0) || !(lambda[i] > 0.0) || !std::isfinite(lambda[i])) {
      throw RangeError("custom lambda rows need t in (0,1] and lambda > 0");
    }
    rows.emplace_back(std::log(t[i]), std::log(lambda[i]));
  }
  std::sort(rows.begin(), rows.end());
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].first == rows[i - 1].first) throw RangeError("custom lambda table has repeated t");
  }
  auto interp = [rows](double lx) {
    std::size_t i = 0;
    if (lx <= rows.front().first) {
      i = 0;
    } else if (lx >= rows.back().first) {
      i = rows.size() - 2;
    } else {
      auto it = std::upper_bound(rows.begin(), rows.end(), std::make_pair(lx, -HUGE_VAL));
      i = static_cast<std::size_t>(it - rows.begin()) - 1;
    }
    const auto& a = rows[i];
    const auto& b = rows[i + 1];
    return a.second + (lx - a.first) * (b.second - a.second) / (b.first - a.first);
  };
  GaugeFunction g;
  g.kind_ = GaugeKind::custom_lambda;
  g.table_ = make_table(interp, std::min(std::exp(rows.front().first), 0.5));
  return g;
}

GaugeFunction GaugeFunction::custom(const std::function<double(double)>& lambda, double t_min) {
  GaugeFunction g;
  g.kind_ = GaugeKind::custom_lambda;
  g.table_ = make_table([&](double lx) { return std::log(lambda(std::exp(lx))); }, t_min);
  return g;
}

std::string GaugeFunction::name() const {
  std::ostringstream os;
  switch (kind_) {
    case GaugeKind::entropy_log:
      return "entropy";
    case GaugeKind::power_alpha:
      os << "power(" << alpha_ << (variant_ == PhiVariant::nominal ? ",nominal)" : ",identity)");
      return os.str();
    case GaugeKind::custom_lambda:
      return "custom";
  }
  return "unknown";
}

double GaugeFunction::phi1(double t) const {
  if (!(t > 0.0)) return HUGE_VAL;
  switch (kind_) {
    case GaugeKind::entropy_log:
      return t >= 1.0 ? 0.0 : -std::log(t);
    case GaugeKind::power_alpha:
      return variant_ == PhiVariant::nominal ? std::pow(t, alpha_ - 1.0) : std::pow(t, alpha_ - 1.0) - 1.0;
    case GaugeKind::custom_lambda:
      return table_->phi1(t);
  }
  return 0.0;
}

double GaugeFunction::phi(double t) const {
  if (!(t >= 0.0 && t <= 1.0)) throw RangeError("phi is defined on [0,1]");
  if (t == 0.0) return 0.0;
  switch (kind_) {
    case GaugeKind::entropy_log:
      return t == 1.0 ? 0.0 : -t * std::log(t);
    case GaugeKind::power_alpha:
      return variant_ == PhiVariant::nominal ? std::pow(t, alpha_) : std::pow(t, alpha_) - t;
    case GaugeKind::custom_lambda:
      return t * table_->phi1(t);
  }
  return 0.0;
}

double GaugeFunction::lambda(double t) const {
  if (!(t > 0.0)) throw RangeError("lambda is defined for t > 0");
  switch (kind_) {
    case GaugeKind::entropy_log:
      return t;
    case GaugeKind::power_alpha:
      return std::pow(t, 2.0 - alpha_) / (1.0 - alpha_);
    case GaugeKind::custom_lambda:
      return std::exp(table_->log_lambda(std::log(t)));
  }
  return 0.0;
}

double GaugeFunction::lambda_integral(double lo, double hi) const {
  if (!(lo > 0.0) || hi < lo) throw RangeError("lambda_integral needs 0 < lo <= hi");
  switch (kind_) {
    case GaugeKind::entropy_log:
      return std::log(hi / lo);
    case GaugeKind::power_alpha:
      return std::pow(lo, alpha_ - 1.0) - std::pow(hi, alpha_ - 1.0);
    case GaugeKind::custom_lambda: {
      if (hi <= 1.0) return table_->phi1(lo) - table_->phi1(hi);
      return integrate_log([this](double t) { return 1.0 / lambda(t); }, lo, hi, 1e-13).value;
    }
  }
  return 0.0;
}

double GaugeFunction::eps_over_lambda_integral(double lo, double hi) const {
  if (!(lo >= 0.0) || hi < lo) throw RangeError("eps_over_lambda_integral needs 0 <= lo <= hi");
  switch (kind_) {
    case GaugeKind::entropy_log:
      return hi - lo;
    case GaugeKind::power_alpha:
      return (1.0 - alpha_) / alpha_ * (std::pow(hi, alpha_) - std::pow(lo, alpha_));
    case GaugeKind::custom_lambda: {
      if (lo == hi) return 0.0;
      const double l = lo > 0.0 ? lo : hi * 1e-12;
      return integrate_log([this](double t) { return t / lambda(t); }, l, hi, 1e-13).value;
    }
  }
  return 0.0;
}

double GaugeFunction::increasing_up_to() const {
  switch (kind_) {
    case GaugeKind::entropy_log:
      return std::exp(-1.0);
    case GaugeKind::power_alpha:
      return variant_ == PhiVariant::nominal ? 1.0 : std::pow(alpha_, 1.0 / (1.0 - alpha_));
    case GaugeKind::custom_lambda: {
      double prev = 0.0;
      double last = 0.0;
      for (int s = 40 * 64; s >= 0; --s) {
        const double t = std::exp2(-s / 64.0);
        const double v = phi(t);
        if (v < prev) return last;
        prev = v;
        last = t;
      }
      return 1.0;
    }
  }
  return 0.0;
}

int max_grid_depth(const GaugeFunction& g) {
  switch (g.kind()) {
    case GaugeKind::entropy_log:
      return static_cast<int>(std::floor(std::log2(kGenerationCap)));
    case GaugeKind::power_alpha:
      return kGenerationCap;
    case GaugeKind::custom_lambda: {
      int d = 1;
      while (d < kGenerationCap) {
        try {
          build_grid(g, d + 1);
        } catch (const Error&) {
          break;
        }
        ++d;
      }
      return d;
    }
  }
  return 0;
}

PhiDyadicGrid build_grid(const GaugeFunction& g, int depth) {
  if (depth < 1) throw RangeError("grid depth must be at least 1");
  PhiDyadicGrid grid;
  switch (g.kind()) {
    case GaugeKind::entropy_log:
      for (int j = 1; j <= depth; ++j) {
        if (j > 30 || (1 << j) > kGenerationCap) throw RangeError("entropy grid exceeds the generation cap");
        grid.generations.push_back(1 << j);
      }
      break;
    case GaugeKind::power_alpha:
      if (depth > kGenerationCap) throw RangeError("power grid exceeds the generation cap");
      for (int j = 1; j <= depth; ++j) grid.generations.push_back(j);
      break;
    case GaugeKind::custom_lambda: {
      int n = 1;
      grid.generations.push_back(n);
      while (static_cast<int>(grid.generations.size()) < depth) {
        const double top = std::ldexp(1.0, -n);
        const double need = g.phi1(top);
        int m = n + 1;
        while (m <= kGenerationCap && g.lambda_integral(std::ldexp(1.0, -m), top) < need) ++m;
        if (m > kGenerationCap) throw NumericError("grid cannot be continued within the generation cap");
        grid.generations.push_back(m);
        n = m;
      }
      break;
    }
  }
  // Certification uses one generation past the end of the returned list.
  grid.c_lo = HUGE_VAL;
  grid.c_hi = 0.0;
  grid.grid_constant = 0.0;
  for (std::size_t j = 0; j + 1 < grid.generations.size(); ++j) {
    const double a = std::ldexp(1.0, -grid.generations[j]);
    const double b = std::ldexp(1.0, -grid.generations[j + 1]);
    const double base = g.phi1(a);
    if (!(base > 0.0)) continue;
    const double r = g.lambda_integral(b, a) / base;
    grid.c_lo = std::min(grid.c_lo, r);
    grid.c_hi = std::max(grid.c_hi, r);
    grid.grid_constant = std::max(grid.grid_constant, g.phi1(b) / base);
  }
  if (grid.generations.size() < 2) {
    // A single generation carries no refinement step; use the analytic step.
    const int n = grid.generations.front();
    const int next = g.kind() == GaugeKind::entropy_log ? 2 * n : n + 1;
    const double a = std::ldexp(1.0, -n);
    const double b = std::ldexp(1.0, -next);
    const double base = g.phi1(a);
    grid.c_lo = grid.c_hi = g.lambda_integral(b, a) / base;
    grid.grid_constant = g.phi1(b) / base;
  }
  return grid;
}

RegularityReport check_regularity(const GaugeFunction& g, const RegularityCeilings& ceilings) {
  RegularityReport rep;
  rep.g2_lo = HUGE_VAL;
  rep.g2_hi = 0.0;
  for (int s = 8; s <= 320; ++s) {
    const double t = std::exp2(-s / 8.0);
    const double base = g.lambda(t);
    for (int i = 0; i <= 32; ++i) {
      const double theta = 1.0 + i / 32.0;
      const double r = g.lambda(theta * t) / base;
      rep.g2_lo = std::min(rep.g2_lo, r);
      rep.g2_hi = std::max(rep.g2_hi, r);
    }
  }
  rep.g3 = 0.0;
  for (int s = 8; s <= 320; ++s) {
    const double t = std::exp2(-s / 8.0);
    const double base = g.phi(t);
    if (!(base > 0.0)) continue;
    double sum = 0.0;
    for (int k = 0; k < 1100; ++k) {
      const double term = g.phi(std::ldexp(t, -k)) / base;
      sum += term;
      if (term < 1e-17 * sum) break;
    }
    rep.g3 = std::max(rep.g3, sum);
  }
  rep.t_star = g.increasing_up_to();
  if (rep.g2_hi > ceilings.doubling) {
    std::ostringstream os;
    os << "doubling constant " << rep.g2_hi << " exceeds ceiling " << ceilings.doubling;
    rep.violations.push_back(os.str());
  }
  if (rep.g3 > ceilings.geometric) {
    std::ostringstream os;
    os << "geometric sum constant " << rep.g3 << " exceeds ceiling " << ceilings.geometric;
    rep.violations.push_back(os.str());
  }
  return rep;
}

}  // namespace carleson
