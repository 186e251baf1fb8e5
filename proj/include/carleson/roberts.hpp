#pragma once

// Roberts grating: iteratively cap a measure at C·φ(|I|) on the arcs of
// successively finer dyadic partitions.

#include <optional>
#include <vector>

#include "carleson/circle.hpp"
#include "carleson/gauge.hpp"

namespace carleson {

struct GrateResult {
  AtomicMeasure grated;
  AtomicMeasure remainder;
  std::vector<Arc> heavy;
};

// An arc is heavy when μ(I) > C·φ(|I|); heavy arcs are scaled uniformly so
// that the grated mass equals C·φ(|I|).
GrateResult grate(const AtomicMeasure& mu, const std::vector<Arc>& partition, double C, const GaugeFunction& g);

struct RobertsParams {
  double C = 1.0;
  int j0 = 0;
  int max_layers = 12;
};

struct RobertsLayer {
  int generation = 0;
  AtomicMeasure measure;
  std::vector<DyadicArc> heavy;
  double light_entropy = 0.0;  // Σ φ(|I|) over the light arcs of this layer
};

struct RobertsDecomposition {
  std::vector<RobertsLayer> layers;
  AtomicMeasure residual;
  AtomicMeasure input;
  GaugeFunction gauge;
  PhiDyadicGrid grid;
  RobertsParams params;
  // Per input atom: its mass in each layer and in the residual (atom-by-atom
  // bookkeeping used to certify conservation).
  std::vector<std::vector<double>> layer_masses;
  std::vector<double> residual_masses;
};

// Throws RangeError when the grid has fewer than j0 + max_layers generations.
RobertsDecomposition roberts_decompose(const AtomicMeasure& mu, const GaugeFunction& g, const PhiDyadicGrid& grid,
                                       const RobertsParams& params);

struct LightEntropy {
  double value = 0.0;
  double bound = 0.0;
  double grid_constant = 0.0;
  bool holds = false;
};

// Σ φ(|I|) over light arcs of all layers against
// max(1, grid constant)·(2^{n}φ(2^{-n}) + μ(circle)/C), n the first layer's generation.
LightEntropy light_arc_entropy(const RobertsDecomposition& d);

struct Certification {
  double conservation_error = 0.0;  // max over atoms, relative to the atom mass
  double worst_layer_ratio = 0.0;   // max μ_j(I)/(Cφ(|I|)) over all arcs
  bool conserved = false;
  bool layer_bounds = false;
  bool nested = false;
  bool refining = false;
};

Certification certify(const RobertsDecomposition& d, double tolerance = 1e-12);

struct ChargeRow {
  int j0 = 0;
  double layered_mass_on_set = 0.0;  // Σ_j μ_j(E)
  double total_layer_mass = 0.0;
  double residual_mass = 0.0;
};

// One decomposition per offset j0 with the same number of layers. When E is
// given, each layer's mass on E is reported.
std::vector<ChargeRow> charges_bc_test(const AtomicMeasure& mu, const GaugeFunction& g, const PhiDyadicGrid& grid,
                                       double C, const std::vector<int>& offsets, int layers,
                                       const std::optional<ClosedSet>& E = {});

// Closed set made of the final layer's heavy arcs: it carries the residual.
ClosedSet residual_carrier(const RobertsDecomposition& d);

}  // namespace carleson
