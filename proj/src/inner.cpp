#include "carleson/inner.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numbers>

#include "carleson/error.hpp"
#include "carleson/parallel.hpp"
#include "carleson/series.hpp"
#include "carleson/summation.hpp"

namespace carleson {

namespace {

constexpr double kPi = std::numbers::pi;

void require_disk_depth(double t) {
  if (!(t > 0.0 && t <= 1.0)) throw RangeError("disk point must satisfy 0 < 1 - |z| <= 1");
}

// Kernel pieces for one atom at turn offset d = θ − φ and depth t.
struct Kernel {
  double s;   // sin(πd)
  double c;   // cos(πd)
  double q;   // |ζ − z|² = t² + 4(1−t)s²
};

inline Kernel kernel(double d, double t) {
  const double s = std::sin(kPi * d);
  const double c = std::cos(kPi * d);
  return {s, c, t * t + 4.0 * (1.0 - t) * s * s};
}

// With ζ = e^{iφ} and z = r e^{iθ}: ζ/(ζ−z)² = e^{−iθ} e^{iδ}/(1 − r e^{iδ})²,
// δ = θ − φ, so one sincos per atom gives both sums; the phase e^{−iθ} is
// left to the caller.
std::complex<double> rotated_log_derivative(const AtomicMeasure& mu, double th, double t) {
  const double r = 1.0 - t;
  std::complex<double> h = 0.0;
  for (const auto& a : mu.atoms()) {
    const auto k = kernel(th - a.position.turns(), t);
    const std::complex<double> w(t + 2.0 * r * k.s * k.s, -2.0 * r * k.s * k.c);
    const std::complex<double> turn(k.c * k.c - k.s * k.s, 2.0 * k.s * k.c);
    h -= 2.0 * a.mass * turn / (w * w);
  }
  return h;
}

// Plain running sum for the sweeps; all terms are positive.
double poisson_sum(const AtomicMeasure& mu, double th, double t) {
  double P = 0.0;
  for (const auto& a : mu.atoms()) P += a.mass * t * (2.0 - t) / kernel(th - a.position.turns(), t).q;
  return P;
}

struct PointValues {
  double poisson;
  double abs_h;
};

PointValues poisson_and_log_derivative(const AtomicMeasure& mu, double th, double t) {
  const double r = 1.0 - t;
  double P = 0.0;
  std::complex<double> h = 0.0;
  for (const auto& a : mu.atoms()) {
    const auto k = kernel(th - a.position.turns(), t);
    const std::complex<double> w(t + 2.0 * r * k.s * k.s, -2.0 * r * k.s * k.c);
    const std::complex<double> turn(k.c * k.c - k.s * k.s, 2.0 * k.s * k.c);
    P += a.mass * t * (2.0 - t) / k.q;
    h += a.mass * turn / (w * w);
  }
  return {P, 2.0 * std::abs(h)};
}

}  // namespace

DiskPoint DiskPoint::polar(Angle theta, double depth) {
  require_disk_depth(depth);
  DiskPoint p;
  p.theta_ = theta;
  p.depth_ = depth;
  return p;
}

DiskPoint DiskPoint::cartesian(double re, double im) {
  const double r = std::hypot(re, im);
  if (!(r < 1.0)) throw RangeError("disk point must lie strictly inside the unit disk");
  const double theta = r == 0.0 ? 0.0 : std::atan2(im, re) / (2.0 * kPi);
  return polar(Angle(theta), 1.0 - r);
}

double DiskPoint::re() const { return radius() * std::cos(theta_.radians()); }
double DiskPoint::im() const { return radius() * std::sin(theta_.radians()); }

double poisson(const AtomicMeasure& mu, const DiskPoint& z) {
  const double t = z.depth();
  const double th = z.angle().turns();
  std::vector<double> terms;
  terms.reserve(mu.size());
  for (const auto& a : mu.atoms()) {
    const auto k = kernel(th - a.position.turns(), t);
    terms.push_back(a.mass * t * (2.0 - t) / k.q);
  }
  return pairwise_sum(terms);
}

std::complex<double> herglotz(const AtomicMeasure& mu, const DiskPoint& z) {
  const double t = z.depth();
  const double r = z.radius();
  const double th = z.angle().turns();
  std::vector<double> re, im;
  for (const auto& a : mu.atoms()) {
    const auto k = kernel(th - a.position.turns(), t);
    re.push_back(a.mass * t * (2.0 - t) / k.q);
    im.push_back(a.mass * 2.0 * r * (2.0 * k.s * k.c) / k.q);
  }
  return {pairwise_sum(re), pairwise_sum(im)};
}

std::complex<double> s_mu(const AtomicMeasure& mu, const DiskPoint& z) { return std::exp(-herglotz(mu, z)); }

std::complex<double> s_mu_log_derivative(const AtomicMeasure& mu, const DiskPoint& z) {
  return rotated_log_derivative(mu, z.angle().turns(), z.depth()) * std::polar(1.0, -2.0 * kPi * z.angle().turns());
}

double s_mu_deriv_abs(const AtomicMeasure& mu, const DiskPoint& z) {
  const auto e = poisson_and_log_derivative(mu, z.angle().turns(), z.depth());
  return e.abs_h * std::exp(-e.poisson);
}

double s_mu_deriv_boundary(const AtomicMeasure& mu, Angle theta) {
  double sum = 0.0;
  for (const auto& a : mu.atoms()) {
    const double s = std::sin(kPi * (theta.turns() - a.position.turns()));
    if (s == 0.0) return HUGE_VAL;
    sum += a.mass / (4.0 * s * s);
  }
  return 2.0 * sum;
}

namespace {

// Boundary derivative along one gap, parametrised by the distance y from the
// left or right end so that points near an endpoint keep relative accuracy.
// Atoms within twice the gap length are summed exactly; the rest form a
// smooth function on the gap that is interpolated at Chebyshev points.
class GapProfile {
 public:
  GapProfile(const AtomicMeasure& mu, const Arc& J) : length_(J.length()) {
    const double l = J.left().turns();
    const double r = l + length_;
    const double reach = 2.0 * length_;
    std::vector<double> far_mass, far_offset;
    for (std::size_t i = 0; i < mu.size(); ++i) {
      const double phi = mu[i].position.turns();
      const double dl = snap(wrap(l - phi));
      const double dr = snap(wrap(r - phi));
      // Distance from the atom to the closed gap.
      const bool inside = dl >= 0.0 && dr <= 0.0 && dl - dr <= length_ * (1.0 + 1e-12);
      const double dist = inside ? 0.0 : std::min(std::abs(dl), std::abs(dr));
      if (dist <= reach || reach >= 0.25) {
        mass_.push_back(mu[i].mass);
        left_.push_back(dl);
        right_.push_back(dr);
      } else {
        far_mass.push_back(mu[i].mass);
        far_offset.push_back(dl);
      }
    }
    if (!far_mass.empty()) {
      for (int k = 0; k <= kCheb; ++k) {
        const double x = 0.5 * length_ * (1.0 - std::cos(kPi * k / kCheb));
        nodes_[k] = x;
        double sum = 0.0;
        for (std::size_t i = 0; i < far_mass.size(); ++i) {
          const double s = std::sin(kPi * (far_offset[i] + x));
          sum += far_mass[i] / (4.0 * s * s);
        }
        values_[k] = sum;
      }
      has_far_ = true;
    }
  }

  // side < 0: distance from the left end; side > 0: from the right end.
  double derivative(int side, double y) const {
    double sum = has_far_ ? far(side <= 0 ? y : length_ - y) : 0.0;
    for (std::size_t i = 0; i < mass_.size(); ++i) {
      const double d = side <= 0 ? left_[i] + y : right_[i] - y;
      const double s = std::sin(kPi * d);
      if (s == 0.0) return HUGE_VAL;
      sum += mass_[i] / (4.0 * s * s);
    }
    return 2.0 * sum;
  }

 private:
  static constexpr int kCheb = 16;

  // Barycentric interpolation at Chebyshev points of the second kind.
  double far(double x) const {
    double num = 0.0, den = 0.0;
    for (int k = 0; k <= kCheb; ++k) {
      const double diff = x - nodes_[k];
      if (diff == 0.0) return values_[k];
      double w = (k % 2 == 0) ? 1.0 : -1.0;
      if (k == 0 || k == kCheb) w *= 0.5;
      num += w * values_[k] / diff;
      den += w / diff;
    }
    return num / den;
  }

  static double wrap(double d) {
    d -= std::floor(d + 0.5);
    return d;
  }
  static double snap(double d) { return std::abs(d) < 1e-15 ? 0.0 : d; }

  double length_;
  std::vector<double> mass_, left_, right_;
  bool has_far_ = false;
  double nodes_[kCheb + 1] = {};
  double values_[kCheb + 1] = {};
};

// Integrates f(derivative) over one gap by Whitney pieces. `edge_tail` models
// the contribution of an edge remainder of length ℓ from the value at ℓ.
template <class F, class Tail>
double gap_integral(const GapProfile& prof, const Arc& J, const QuadratureOptions& opt, F f, Tail edge_tail,
                    bool& ok) {
  const double L = J.length();
  const int depth = std::max(0, opt.whitney_depth);
  auto pieces = whitney_decompose(Arc(Angle(0.0), L), depth);
  std::vector<double> parts;
  for (const auto& w : pieces) {
    // Offsets of the piece from its nearer end.
    const double a = w.arc.left().turns();
    const double b = a + w.arc.length();
    const int side = w.level > 0 ? 1 : -1;
    if (w.remainder) {
      const double ell = w.arc.length();
      parts.push_back(edge_tail(f(prof.derivative(side, ell)), ell));
      continue;
    }
    double lo = a, hi = b;
    if (side > 0) {
      lo = L - b;
      hi = L - a;
      if (lo < 0.0) lo = 0.0;
    }
    // Integrate over [0, 1]: the error estimate misbehaves on tiny intervals.
    const double width = hi - lo;
    auto g = [&](double u) { return f(prof.derivative(side, lo + width * u)); };
    double err = 0.0;
    const double v =
        width * boost::math::quadrature::gauss_kronrod<double, 15>::integrate(g, 0.0, 1.0, 8, opt.rel_tol, &err);
    if (!(width * err <= 1e-6 * std::abs(v) + 1e-300) && v != 0.0) ok = false;
    parts.push_back(v);
  }
  return pairwise_sum(parts);
}

template <class F, class Tail>
NormReport boundary_norm(const AtomicMeasure& mu, const ClosedSet& E, const QuadratureOptions& opt, F f, Tail tail,
                         const char* method) {
  NormReport rep;
  rep.method = method;
  rep.depth = opt.whitney_depth;
  if (mu.empty() || E.is_empty()) {
    rep.per_gap.assign(E.gaps().size(), 0.0);
    return rep;
  }
  const auto gaps = E.gaps();
  struct Out {
    double v = 0.0;
    bool ok = true;
  };
  auto res = parallel_map<Out>(gaps.size(), [&](std::size_t i) {
    Out o;
    GapProfile prof(mu, gaps[i]);
    o.v = gap_integral(prof, gaps[i], opt, f, tail, o.ok);
    return o;
  });
  for (const auto& o : res) {
    rep.per_gap.push_back(o.v);
    rep.quadrature_ok = rep.quadrature_ok && o.ok;
  }
  rep.value = pairwise_sum(rep.per_gap);
  return rep;
}

void require_hp_exponent(double p) {
  if (!(p > 0.0 && p < 0.5)) throw RangeError("H^p exponent must lie in (0, 1/2)");
}

}  // namespace

NormReport hp_norm_boundary(const AtomicMeasure& mu, const ClosedSet& E, double p, const QuadratureOptions& opt) {
  require_hp_exponent(p);
  // Near an atom the derivative behaves like c·s^{-2}; the remainder [0, ℓ]
  // then integrates to f(ℓ)^p·ℓ/(1−2p).
  return boundary_norm(
      mu, E, opt, [p](double d) { return std::pow(d, p); },
      [p](double fp, double ell) { return fp * ell / (1.0 - 2.0 * p); }, "whitney-quadrature");
}

NormReport nevanlinna_norm(const AtomicMeasure& mu, const ClosedSet& E, const QuadratureOptions& opt) {
  // With the same model, ∫_0^ℓ log(c s^{-2}) ds = ℓ(log f(ℓ) + 2).
  return boundary_norm(
      mu, E, opt, [](double d) { return d > 1.0 ? std::log(d) : 0.0; },
      [](double lf, double ell) { return lf > 0.0 ? ell * (lf + 2.0) : 0.0; }, "whitney-quadrature");
}

NormReport hp_test_sum(const AtomicMeasure& mu, const ClosedSet& E, double p) {
  require_hp_exponent(p);
  NormReport rep;
  rep.method = "closed-form";
  const auto gaps = E.gaps();
  rep.per_gap = parallel_map<double>(gaps.size(), [&](std::size_t i) {
    const auto& J = gaps[i];
    const double u = poisson(mu, DiskPoint::polar(J.midpoint(), 0.5 * J.length()));
    return std::pow(u, p) * std::pow(J.length(), 1.0 - p);
  });
  rep.value = pairwise_sum(rep.per_gap);
  return rep;
}

HoelderFactors cullen_hoelder_factors(const AtomicMeasure& mu, const ClosedSet& E, double p, double q) {
  require_hp_exponent(p);
  if (!(q >= p / (1.0 - p))) throw RangeError("Hoelder split needs q >= p/(1-p)");
  HoelderFactors h;
  h.delta = q * p / (q - p);
  const auto gaps = E.gaps();
  auto u = parallel_map<double>(gaps.size(), [&](std::size_t i) {
    return poisson(mu, DiskPoint::polar(gaps[i].midpoint(), 0.5 * gaps[i].length()));
  });
  std::vector<double> a, b, t;
  for (std::size_t i = 0; i < gaps.size(); ++i) {
    const double L = gaps[i].length();
    a.push_back(std::pow(u[i], h.delta) * L);
    b.push_back(std::pow(L, 1.0 - q));
    t.push_back(std::pow(u[i], p) * std::pow(L, 1.0 - p));
  }
  h.factor_a = std::pow(pairwise_sum(a), p / h.delta);
  h.factor_b = std::pow(pairwise_sum(b), (h.delta - p) / h.delta);
  h.product = h.factor_a * h.factor_b;
  h.hp_test = pairwise_sum(t);
  return h;
}

namespace {

// Depth-first sweep over dyadic top boxes. Boxes with an atom within the
// window are evaluated at their centre and refined; below a box with no atom
// nearby, |S'| and P are replaced by their boundary-layer forms
// P ≈ β t and |h| ≈ β, β the Ahern–Clark derivative at the arc midpoint,
// and the whole region under the top is integrated in closed form.
class Sweep {
 public:
  Sweep(const AtomicMeasure& mu, const SweepOptions& opt) : mu_(mu), opt_(opt) {
    if (opt.depth < 0 || opt.depth > kGenerationCap) throw RangeError("sweep depth outside [0, 48]");
    if (!(opt.window >= 1.0)) throw RangeError("sweep window must be at least 1");
  }

  bool near(const DyadicArc& I) const {
    const double L = I.length();
    const double reach = opt_.window * L;
    if (L + 2.0 * reach >= 1.0) return !mu_.empty();
    const double a = I.left() - reach;
    const double b = I.right() + reach;
    auto count = [&](double lo, double hi) {
      auto [i, j] = mu_.index_range(lo, hi);
      return j > i;
    };
    if (a < 0.0) return count(a + 1.0, 1.0) || count(0.0, b);
    if (b > 1.0) return count(a, 1.0) || count(0.0, b - 1.0);
    return count(a, b);
  }

  template <class Visit>
  void run(Visit& visit) {
    // Boxes above generation `split` are visited in order; the subtrees below
    // are independent and evaluated in order-preserving parallel.
    const int split = std::min(opt_.depth, 4);
    std::vector<DyadicArc> frontier;
    walk(DyadicArc(0, 0), split, visit, visit.totals, &frontier);
    auto partial = parallel_map<typename Visit::Totals>(frontier.size(), [&](std::size_t i) {
      typename Visit::Totals tot(opt_.depth);
      walk(frontier[i], opt_.depth + 1, visit, tot, nullptr);
      return tot;
    });
    for (const auto& t : partial) visit.totals.merge(t);
  }

 private:
  // Visits I and refines while atoms are near. Children at generation `stop`
  // are handed to `frontier` instead of being visited.
  template <class Visit, class Totals>
  void walk(const DyadicArc& I, int stop, Visit& visit, Totals& tot, std::vector<DyadicArc>* frontier) {
    visit.top(I, tot);
    if (!near(I)) {
      visit.block(I, tot);
      return;
    }
    if (I.generation >= opt_.depth) return;
    for (int c = 0; c < 2; ++c) {
      const auto child = I.child(c);
      if (frontier && child.generation == stop) {
        frontier->push_back(child);
      } else {
        walk(child, stop, visit, tot, frontier);
      }
    }
  }

  const AtomicMeasure& mu_;
  SweepOptions opt_;
};

struct LevelTotals {
  std::vector<double> centre, inner, outer;
  std::size_t boxes = 0;
  explicit LevelTotals(int depth = 0)
      : centre(static_cast<std::size_t>(depth) + 1, 0.0),
        inner(static_cast<std::size_t>(depth) + 1, 0.0),
        outer(static_cast<std::size_t>(depth) + 1, 0.0) {}
  void merge(const LevelTotals& o) {
    for (std::size_t i = 0; i < centre.size(); ++i) {
      centre[i] += o.centre[i];
      inner[i] += o.inner[i];
      outer[i] += o.outer[i];
    }
    boxes += o.boxes;
  }
};

// Harnack constant of a top box relative to its centre.
double harnack_kappa(double L) {
  auto rho_halfplane = [&](double dx, double y1, double y2) {
    return std::sqrt((dx * dx + (y1 - y2) * (y1 - y2)) / (dx * dx + (y1 + y2) * (y1 + y2)));
  };
  auto rho_disk = [&](double dtheta, double t1, double t2) {
    const std::complex<double> z(1.0 - t1, 0.0);
    const std::complex<double> w = std::polar(1.0 - t2, 2.0 * kPi * dtheta);
    return std::abs(z - w) / std::abs(1.0 - std::conj(z) * w);
  };
  const double tc = 0.75 * L;
  double rho = 0.0;
  for (double tcorner : {0.5 * L, std::min(L, 1.0 - 1e-12)}) {
    const double r = L < 0x1p-20 ? rho_halfplane(2.0 * kPi * 0.5 * L, tc, tcorner) : rho_disk(0.5 * L, tc, tcorner);
    rho = std::max(rho, r);
  }
  return (1.0 + rho) / (1.0 - rho);
}

double power_integral(double lo, double hi, double sigma) {
  if (!(hi > lo)) return 0.0;
  if (sigma == 1.0) return std::log(hi / lo);
  return (std::pow(hi, 1.0 - sigma) - std::pow(lo, 1.0 - sigma)) / (1.0 - sigma);
}

// Three-point Gauss–Legendre nodes and weights on [0, 1].
constexpr double kNodes[3] = {0.11270166537925831, 0.5, 0.88729833462074169};
constexpr double kWeights[3] = {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};

struct AreaVisit {
  using Totals = LevelTotals;
  const AtomicMeasure& mu;
  double threshold;
  double sigma;
  std::vector<double> kappa;
  Totals totals;

  static constexpr int kCells = 4;

  void top(const DyadicArc& I, Totals& tot) const {
    const double L = I.length();
    const double P = poisson_sum(mu, I.arc().midpoint().turns(), 0.75 * L);
    const double w = L * power_integral(0.5 * L, L, sigma);
    const auto g = static_cast<std::size_t>(I.generation);
    const double k = kappa[g];
    if (P > threshold * k) tot.inner[g] += w;
    if (P * k > threshold) tot.outer[g] += w;
    ++tot.boxes;
    if (P > threshold * k || P * k <= threshold) {
      if (P > threshold) tot.centre[g] += w;
      return;
    }
    // Ambiguous box: classify a grid of cells instead of the centre alone.
    const double h = L / kCells;
    const double dt = 0.5 * L / kCells;
    for (int j = 0; j < kCells; ++j) {
      const double t0 = 0.5 * L + j * dt;
      const double cell = h * power_integral(t0, t0 + dt, sigma);
      for (int i = 0; i < kCells; ++i) {
        const Angle th(I.left() + (i + 0.5) * h);
        if (poisson_sum(mu, th.turns(), t0 + 0.5 * dt) > threshold) tot.centre[g] += cell;
      }
    }
  }

  // Below the top, P ≈ β t with β the boundary derivative, integrated across
  // the arc at Gauss nodes.
  void block(const DyadicArc& I, Totals& tot) const {
    const double L = I.length();
    const auto g = static_cast<std::size_t>(I.generation);
    const double k = kappa[g];
    for (int i = 0; i < 3; ++i) {
      const double beta = s_mu_deriv_boundary(mu, Angle(I.left() + kNodes[i] * L));
      if (!(beta > 0.0)) continue;
      auto part = [&](double tau) { return kWeights[i] * L * power_integral(tau / beta, 0.5 * L, sigma); };
      tot.centre[g] += part(threshold);
      tot.inner[g] += part(threshold * k);
      tot.outer[g] += part(threshold / k);
    }
  }
};

struct BesovVisit {
  using Totals = LevelTotals;
  static constexpr int kFineGenerations = 8;
  const AtomicMeasure& mu;
  double p;
  double q;
  Totals totals;

  double density(Angle theta, double t) const {
    const auto e = poisson_and_log_derivative(mu, theta.turns(), t);
    return std::pow(e.abs_h, q) * std::exp(-q * e.poisson) * std::pow(t * (2.0 - t), q - 1.0 - p);
  }

  void top(const DyadicArc& I, Totals& tot) const {
    const double L = I.length();
    // Coarse tops are wide compared with the features of the integrand and
    // get a product rule on a grid of cells.
    const int cells = I.generation < kFineGenerations ? 4 : 1;
    const double w = L / cells;
    const double h = 0.5 * L / cells;
    double v = 0.0;
    for (int a = 0; a < cells; ++a) {
      for (int b = 0; b < cells; ++b) {
        for (int i = 0; i < 3; ++i) {
          for (int j = 0; j < 3; ++j) {
            const Angle th(I.left() + (a + kNodes[i]) * w);
            v += kWeights[i] * kWeights[j] * density(th, 0.5 * L + (b + kNodes[j]) * h);
          }
        }
      }
    }
    v *= w * h;
    const auto g = static_cast<std::size_t>(I.generation);
    tot.centre[g] += v;
    tot.inner[g] += v;
    tot.outer[g] += v;
    ++tot.boxes;
  }

  // |I| β^q ∫_0^{L/2} e^{−qβt} (2t)^{q−1−p} dt at each Gauss node.
  void block(const DyadicArc& I, Totals& tot) const {
    const double L = I.length();
    const double s = q - p;
    double v = 0.0;
    for (int i = 0; i < 3; ++i) {
      const double beta = s_mu_deriv_boundary(mu, Angle(I.left() + kNodes[i] * L));
      if (!(beta > 0.0) || !std::isfinite(beta)) continue;
      const double x = q * beta * 0.5 * L;
      v += kWeights[i] * std::pow(beta, q) * std::pow(q * beta, -s) * boost::math::tgamma_lower(s, x);
    }
    v *= L * std::pow(2.0, q - 1.0 - p);
    const auto g = static_cast<std::size_t>(I.generation);
    tot.centre[g] += v;
    tot.inner[g] += v;
    tot.outer[g] += v;
  }
};

void finish(SweepResult& r, const LevelTotals& t) {
  r.terms = t.centre;
  r.inner_terms = t.inner;
  r.outer_terms = t.outer;
  r.boxes = t.boxes;
  r.partial = pairwise_sum(r.terms);
  r.inner = pairwise_sum(r.inner_terms);
  r.outer = pairwise_sum(r.outer_terms);
  const std::size_t n = r.terms.size();
  r.tail = 0.0;
  if (n >= 4 && r.terms[n - 1] > 0.0 && r.terms[n - 4] > 0.0) {
    const double ratio = std::pow(r.terms[n - 1] / r.terms[n - 4], 1.0 / 3.0);
    if (ratio < 1.0) {
      r.tail = r.terms[n - 1] * ratio / (1.0 - ratio);
    } else {
      r.tail = HUGE_VAL;
      r.diverges = true;
    }
  }
  // Leading levels can be negligible (|S'| nearly cancels at the centre for
  // symmetric atoms), which would make the first-term rule meaningless.
  const double biggest = r.outer_terms.empty() ? 0.0 : *std::max_element(r.outer_terms.begin(), r.outer_terms.end());
  std::size_t first = 0;
  while (first < r.outer_terms.size() && r.outer_terms[first] < 1e-3 * biggest) ++first;
  if (classify_series(std::span<const double>(r.outer_terms).subspan(first)).diverges) r.diverges = true;
  r.value = r.partial + r.tail;
}

}  // namespace

SweepResult area_sweep(const AtomicMeasure& mu, double threshold, double sigma, const SweepOptions& opt) {
  if (!(threshold > 0.0)) throw RangeError("area threshold must be positive");
  if (!(sigma >= 0.0 && sigma < 2.0)) throw RangeError("area exponent must lie in [0, 2)");
  Sweep sweep(mu, opt);
  SweepResult r;
  r.depth = opt.depth;
  if (mu.empty()) {
    r.terms.assign(static_cast<std::size_t>(opt.depth) + 1, 0.0);
    r.inner_terms = r.outer_terms = r.terms;
    return r;
  }
  AreaVisit visit{mu, threshold, sigma, {}, LevelTotals(opt.depth)};
  for (int g = 0; g <= opt.depth; ++g) visit.kappa.push_back(harnack_kappa(std::ldexp(1.0, -g)));
  r.kappa = *std::max_element(visit.kappa.begin(), visit.kappa.end());
  sweep.run(visit);
  finish(r, visit.totals);
  return r;
}

SweepResult besov_sweep(const AtomicMeasure& mu, double p, double q, const SweepOptions& opt) {
  if (!(p > 0.0)) throw RangeError("Besov smoothness p must be positive");
  if (!(q >= 1.0 && q <= 2.0)) throw RangeError("Besov exponent q must lie in [1, 2]");
  if (!(q > p)) throw RangeError("Besov exponent q must exceed p");
  Sweep sweep(mu, opt);
  SweepResult r;
  r.depth = opt.depth;
  if (mu.empty()) {
    r.terms.assign(static_cast<std::size_t>(opt.depth) + 1, 0.0);
    r.inner_terms = r.outer_terms = r.terms;
    return r;
  }
  BesovVisit visit{mu, p, q, LevelTotals(opt.depth)};
  sweep.run(visit);
  finish(r, visit.totals);
  return r;
}

NormReport besov_integral(const AtomicMeasure& mu, double p, double q, int depth) {
  SweepOptions opt;
  opt.depth = depth;
  auto s = besov_sweep(mu, p, q, opt);
  NormReport r;
  r.method = "dyadic-top";
  r.per_level = s.terms;
  r.depth = depth;
  r.tail = s.tail;
  r.diverges = s.diverges;
  r.value = s.diverges ? HUGE_VAL : s.value;
  return r;
}

std::vector<RasterSample> modulus_raster(const AtomicMeasure& mu, int n_theta, int n_r, double min_depth) {
  if (n_theta < 1 || n_r < 1) throw RangeError("raster needs at least one angle and one radius");
  if (!(min_depth > 0.0 && min_depth <= 1.0)) throw RangeError("min_depth must lie in (0, 1]");
  std::vector<RasterSample> out;
  out.reserve(static_cast<std::size_t>(n_theta) * static_cast<std::size_t>(n_r));
  for (int i = 0; i < n_theta; ++i) {
    const double theta = static_cast<double>(i) / n_theta;
    for (int j = 0; j < n_r; ++j) {
      const double frac = n_r == 1 ? 0.0 : static_cast<double>(j) / (n_r - 1);
      const double t = std::pow(min_depth, frac);
      const auto z = DiskPoint::polar(Angle(theta), t);
      out.push_back({theta, z.radius(), std::exp(-poisson(mu, z))});
    }
  }
  return out;
}

}  // namespace carleson
