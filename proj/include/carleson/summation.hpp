#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace carleson {

// Pairwise (tree) summation. The reduction order depends only on the input
// length, so results are reproducible regardless of how terms were produced.
template <class It, class Proj>
double pairwise_sum(It first, It last, Proj proj) {
  const auto n = static_cast<std::size_t>(last - first);
  if (n <= 8) {
    double s = 0.0;
    for (; first != last; ++first) s += proj(*first);
    return s;
  }
  const auto half = first + static_cast<std::ptrdiff_t>(n / 2);
  return pairwise_sum(first, half, proj) + pairwise_sum(half, last, proj);
}

inline double pairwise_sum(std::span<const double> v) {
  return pairwise_sum(v.begin(), v.end(), [](double x) { return x; });
}

inline double pairwise_sum(const std::vector<double>& v) {
  return pairwise_sum(std::span<const double>(v));
}

}  // namespace carleson
