#pragma once

// Concrete sets and measures: Cantor sets and measures, the pruned Cantor
// set, and equally spaced atoms.

#include <cstddef>
#include <vector>

#include "carleson/circle.hpp"

namespace carleson {

struct CantorSpec {
  double A = 4.0;  // each defining arc keeps two children of relative length 1/A
  int G = 8;
};

// The circle is [0,1] with 0 and 1 identified; the two outermost generation-1
// arcs therefore touch at 0.
struct CantorSet {
  ClosedSet set;
  std::vector<std::size_t> gap_counts;  // per generation n = 1..G: 2^{n-1}
  std::vector<double> gap_lengths;      // A^{-n+1}(1 - 2/A)
  std::vector<Arc> defining_arcs;       // the 2^G residual arcs, left to right
};

CantorSet cantor_set(const CantorSpec& spec);
// 2^G atoms of mass 2^{-G} at the left ends of the generation-G arcs.
AtomicMeasure cantor_measure(const CantorSpec& spec);

struct PrunedGeneration {
  int n = 0;
  std::size_t arcs_before = 0;
  double scale = 0.0;      // j = log2(1/ℓ_n), ℓ_n the gap length created at n
  double threshold = 0.0;  // j^{-alpha_exp}·2^{e j}
  bool bad = false;        // only the left child survives
};

struct PrunedCantor {
  ClosedSet set;
  AtomicMeasure measure;  // Σ |J|^e (δ_a(J) + δ_b(J)) over gaps J = (a, b)
  double A = 0.0;
  double exponent = 0.0;  // e = (1-2p)/(1-p) = 1/log2(A)
  double beta = 0.0;      // 1/(1 - 2/A): βJ covers the defining arc J was cut from
  std::vector<PrunedGeneration> census;
  std::vector<int> gap_generation;  // per gap of `set`, in set order
};

PrunedCantor pruned_cantor(double p, double alpha_exp, int G);

// n atoms at k/n, each of mass n^{-(2-eps)}.
AtomicMeasure equally_spaced_atoms(int n, double eps);

// Affinely maps each measure into its target arc and scales by its weight.
AtomicMeasure independent_copies(const std::vector<AtomicMeasure>& copies, const std::vector<Arc>& targets,
                                 const std::vector<double>& weights);

}  // namespace carleson
