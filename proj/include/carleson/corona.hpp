#pragma once

// Corona-type decomposition of a measure into alternating heavy (density at
// least M) and light (density at most M/divisor) maximal dyadic arcs, the
// closed sets it carries, and the chains of conditions built on it.

#include <optional>
#include <string>
#include <vector>

#include "carleson/circle.hpp"
#include "carleson/inner.hpp"

namespace carleson {

struct CoronaParams {
  double M = 10.0;
  int depth = 14;
  double light_ratio_divisor = 100.0;
};

struct HeavyNode {
  DyadicArc arc;
  int level = 0;
  int parent = -1;  // index of the light node it sits in, -1 for roots
  std::vector<int> light_children;
  std::vector<DyadicArc> unresolved;  // arcs at the depth cap still above M/divisor
  // Per generation g: dyadic arcs inside `arc` that are not inside a light
  // child (the arcs meeting the carried set, half-open convention).
  std::vector<double> meeting_counts;
};

struct LightNode {
  DyadicArc arc;
  int level = 0;
  int parent = -1;  // heavy node index
  std::vector<int> heavy_children;
  std::vector<DyadicArc> unresolved;  // arcs at the cap with mass that never became heavy
};

struct CoronaDecomposition {
  std::vector<HeavyNode> heavy;
  std::vector<LightNode> light;
  std::vector<DyadicArc> root_unresolved;  // mass outside every heavy root
  CoronaParams params;
  AtomicMeasure input;
};

CoronaDecomposition corona_decompose(const AtomicMeasure& mu, const CoronaParams& params = {});

// One closed set per heavy node: its light children and the complement of
// the node are the gaps, the unresolved arcs are the residual.
std::vector<ClosedSet> extract_bc_sets(const CoronaDecomposition& d);

struct CoronaCheck {
  bool alternation = true;
  bool maximality = true;
  bool packing = true;
  bool coverage = true;
  bool dense_on_sets = true;       // every arc meeting a carried set has density > M/divisor
  double coverage_error = 0.0;     // relative
  double worst_packing = 0.0;      // max over light J of Σ|I|/(|J|/divisor)
  double min_density_on_sets = HUGE_VAL;
  std::size_t arcs_checked = 0;
  bool ok() const { return alternation && maximality && packing && coverage && dense_on_sets; }
};

CoronaCheck check_corona(const CoronaDecomposition& d);

struct CarriedAreaBound {
  double dyadic_sum = 0.0;  // Σ |I| over dyadic arcs meeting the carried sets
  double area = 0.0;        // ∫_{P > threshold} dA/(1−|z|)
  double threshold = 0.0;
  double K = 0.0;
};

// threshold = factor · M/divisor.
CarriedAreaBound carried_area_bound(const CoronaDecomposition& d, double factor = 0.1, int sweep_depth = 30);

// ∫_{|S_μ| < c} dA/(1−|z|)^σ, i.e. the area sweep at Poisson threshold log(1/c).
SweepResult sublevel_area_integral(const AtomicMeasure& mu, double c, double sigma, int depth = 30);

// Finest dyadic generation at which distinct atoms are separated:
// floor(log2(1/min spacing)), 0 for at most one atom, capped at 48.
int resolved_generation(const AtomicMeasure& mu);

struct ChainParams {
  double level = 0.5;  // c of the sublevel set |S_μ| < c
  double M = 1.0;
  double light_ratio_divisor = 100.0;
  std::optional<int> resolved;  // defaults to resolved_generation(μ)
  int whitney_depth = 24;
};

struct ChainCondition {
  std::string name;
  double value = 0.0;
  std::vector<double> terms;  // per dyadic generation, up to the resolved one
  bool diverges = false;
};

struct ChainReport {
  std::vector<ChainCondition> conditions;
  int resolved = 0;
  bool consistent = true;  // no condition finite while a later one diverges
};

// (1) Nevanlinna norm of S′, (2) area condition, (3) entropy norms of the
// carried sets.
ChainReport thm11_pipeline(const AtomicMeasure& mu, const ChainParams& params = {});
// (1) H^p norm of S′, (2) (1+p)-area condition, (3) (1−p)-power norms of
// the carried sets.
ChainReport thm12_pipeline(const AtomicMeasure& mu, double p, const ChainParams& params = {});

}  // namespace carleson
