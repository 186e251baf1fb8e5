#include <cmath>

#include "carleson/constructions.hpp"
#include "carleson/error.hpp"
#include "doctest.h"

using namespace carleson;

TEST_CASE("cantor set A=4 G=2") {
  auto c = cantor_set({4.0, 2});
  REQUIRE(c.set.gaps().size() == 3);
  std::vector<double> lens;
  for (const auto& g : c.set.gaps()) lens.push_back(g.length());
  std::sort(lens.begin(), lens.end());
  CHECK(lens == std::vector<double>{0.125, 0.125, 0.5});
  REQUIRE(c.set.residual().size() == 4);
  for (const auto& r : c.set.residual()) CHECK(r.length() == 1.0 / 16);
  CHECK(c.gap_counts == std::vector<std::size_t>{1, 2});
}

TEST_CASE("cantor generation zero and bookkeeping") {
  auto c0 = cantor_set({3.0, 0});
  CHECK(c0.set.gaps().empty());
  CHECK(c0.set.residual_length() == 1.0);
  for (double A : {2.2, 3.0, 4.0, 6.0, 8.0}) {
    for (int G : {1, 3, 7}) {
      auto c = cantor_set({A, G});
      double total = c.set.residual_length();
      for (const auto& g : c.set.gaps()) total += g.length();
      CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
      // census by length matches the closed form counts
      for (int n = 1; n <= G; ++n) {
        std::size_t count = 0;
        for (const auto& g : c.set.gaps()) {
          if (std::abs(g.length() - c.gap_lengths[static_cast<std::size_t>(n - 1)]) < 1e-9 * g.length()) ++count;
        }
        CHECK(count == c.gap_counts[static_cast<std::size_t>(n - 1)]);
      }
    }
  }
  CHECK_THROWS_AS(cantor_set({2.0, 3}), RangeError);
  CHECK_THROWS_AS(cantor_set({4.0, 31}), RangeError);
}

TEST_CASE("cantor measure splits mass equally") {
  CantorSpec s{4.0, 8};
  auto mu = cantor_measure(s);
  CHECK(mu.total_mass() == doctest::Approx(1.0).epsilon(1e-14));
  for (int k = 0; k <= 8; ++k) {
    auto ck = cantor_set({4.0, k});
    for (const auto& I : ck.defining_arcs) CHECK(mu.mass_in(I) == doctest::Approx(std::ldexp(1.0, -k)));
  }
  CHECK(cantor_measure(s) == mu);
}

TEST_CASE("cantor measure local dimension") {
  CantorSpec s{4.0, 12};
  auto mu = cantor_measure(s);
  std::vector<double> lx, ly;
  for (int n = 2; n <= 10; ++n) {
    const double eps = std::pow(4.0, -n);
    // arc [0, eps) around the defining endpoint 0
    lx.push_back(std::log(eps));
    ly.push_back(std::log(mu.mass_in(Arc(Angle(0.0), eps))));
  }
  const double slope = (ly.back() - ly.front()) / (lx.back() - lx.front());
  CHECK(slope == doctest::Approx(std::log(2.0) / std::log(4.0)).epsilon(1e-9));
}

TEST_CASE("pruned cantor census") {
  auto pc = pruned_cantor(0.3, 1.15, 14);
  CHECK(pc.A == doctest::Approx(std::exp2(0.7 / 0.4)));
  int below_half = 0;
  bool any_bad = false;
  for (const auto& g : pc.census) {
    any_bad = any_bad || g.bad;
    if (!g.bad) CHECK(static_cast<double>(g.arcs_before) <= g.threshold);
    if (static_cast<double>(g.arcs_before) < 0.5 * g.threshold) ++below_half;
  }
  CHECK(any_bad);
  CHECK(below_half <= 3);
  double total = pc.set.residual_length();
  for (const auto& g : pc.set.gaps()) total += g.length();
  CHECK(total == doctest::Approx(1.0));
  CHECK(pc.measure.size() <= 2 * pc.set.gaps().size());
  CHECK_THROWS_AS(pruned_cantor(0.3, 1.4, 10), RangeError);
  CHECK_THROWS_AS(pruned_cantor(0.6, 1.1, 10), RangeError);
}

TEST_CASE("equally spaced atoms") {
  auto mu = equally_spaced_atoms(64, 0.5);
  CHECK(mu.size() == 64);
  CHECK(mu.total_mass() == doctest::Approx(std::pow(64.0, -0.5)));
  auto one = equally_spaced_atoms(1, 0.3);
  CHECK(one.total_mass() == 1.0);
  CHECK_THROWS_AS(equally_spaced_atoms(0, 0.5), RangeError);
}

TEST_CASE("independent copies") {
  auto mu = equally_spaced_atoms(8, 0.5);
  CHECK(independent_copies({mu}, {Arc(Angle(0.0), 1.0)}, {1.0}) == mu);
  auto two = independent_copies({mu, mu}, {Arc(Angle(0.0), 0.5), Arc(Angle(0.5), 0.5)}, {1.0, 0.5});
  CHECK(two.total_mass() == doctest::Approx(1.5 * mu.total_mass()));
  CHECK_THROWS_AS(independent_copies({mu, mu}, {Arc(Angle(0.0), 0.6), Arc(Angle(0.5), 0.5)}, {1.0, 1.0}),
                  RangeError);
}
