#pragma once

#include <random>
#include <vector>

#include "carleson/circle.hpp"

namespace testing_support {

// Random atomic measure: n atoms, half of them on dyadic points of
// generation <= 12 so that boundary conventions get exercised.
inline carleson::AtomicMeasure random_measure(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> coin(0, 1);
  std::vector<carleson::Atom> atoms;
  for (int i = 0; i < n; ++i) {
    double pos = u(rng);
    if (coin(rng)) pos = std::floor(pos * 4096.0) / 4096.0;
    atoms.push_back({carleson::Angle(pos), u(rng) + 1e-3});
  }
  return carleson::AtomicMeasure(std::move(atoms));
}

}  // namespace testing_support
