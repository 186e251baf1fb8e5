#include <cmath>
#include <random>

#include "carleson/constructions.hpp"
#include "carleson/corona.hpp"
#include "carleson/error.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace carleson;

TEST_CASE("corona of a point mass") {
  AtomicMeasure delta({{Angle(0.0), 1.0}});
  auto d = corona_decompose(delta, {2.0, 14, 100.0});
  // The circle has density 1, its left half density 2; below that every right
  // sibling is empty and so light.
  REQUIRE(d.heavy.size() == 1);
  CHECK(d.heavy[0].arc.generation == 1);
  CHECK(d.heavy[0].arc.index == 0);
  CHECK(d.light.size() == 13);
  for (std::size_t k = 0; k < d.light.size(); ++k) CHECK(d.light[k].parent == 0);
  REQUIRE(d.heavy[0].unresolved.size() == 1);
  CHECK(d.heavy[0].unresolved[0].generation == 14);
  CHECK(d.heavy[0].unresolved[0].index == 0);
  CHECK(d.root_unresolved.empty());
  // One arc per generation meets the carried set: the one holding the atom.
  for (int g = 1; g <= 14; ++g) CHECK(d.heavy[0].meeting_counts.at(static_cast<std::size_t>(g)) == 1.0);

  auto c = check_corona(d);
  CHECK(c.ok());
  CHECK(c.coverage_error <= 1e-15);
  CHECK(c.min_density_on_sets == doctest::Approx(2.0));

  auto sets = extract_bc_sets(d);
  REQUIRE(sets.size() == 1);
  double gap_length = 0.0;
  for (const auto& g : sets[0].gaps()) gap_length += g.length();
  CHECK(gap_length + sets[0].residual_length() == doctest::Approx(1.0));
  CHECK(sets[0].residual_length() == doctest::Approx(std::ldexp(1.0, -14)));
  CHECK(sets[0].contains(Angle(0.0)));
  CHECK_FALSE(sets[0].contains(Angle(0.3)));
}

TEST_CASE("corona of the zero measure is empty") {
  auto d = corona_decompose(AtomicMeasure());
  CHECK(d.heavy.empty());
  CHECK(d.light.empty());
  CHECK(d.root_unresolved.empty());
  CHECK(check_corona(d).ok());
  CHECK(extract_bc_sets(d).empty());
  CHECK_THROWS_AS(corona_decompose(AtomicMeasure(), {0.0, 10, 100.0}), RangeError);
  CHECK_THROWS_AS(corona_decompose(AtomicMeasure(), {1.0, 10, 1.0}), RangeError);
  CHECK_THROWS_AS(corona_decompose(AtomicMeasure(), {1.0, 49, 100.0}), RangeError);
}

TEST_CASE("Cantor measure with unit threshold is heavy from the root") {
  auto mu = cantor_measure({4.0, 6});
  auto d = corona_decompose(mu, {1.0, 16, 100.0});
  REQUIRE(!d.heavy.empty());
  CHECK(d.heavy[0].arc.generation == 0);
  CHECK(d.heavy[0].level == 0);
  auto c = check_corona(d);
  CHECK(c.ok());
  CHECK(c.worst_packing <= 1.0);
}

TEST_CASE("corona invariants on random measures") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    auto mu = testing_support::random_measure(rng, 1 + trial % 12);
    CoronaParams params{0.5 + 20.0 * u(rng), 8 + trial % 7, trial % 2 ? 100.0 : 8.0};
    auto d = corona_decompose(mu, params);
    auto c = check_corona(d);
    CHECK(c.alternation);
    CHECK(c.maximality);
    CHECK(c.packing);
    CHECK(c.coverage);
    CHECK(c.dense_on_sets);
    for (const auto& h : d.heavy) {
      CHECK(mu.mass_in(h.arc) >= params.M * h.arc.length() * (1.0 - 1e-12));
      for (int j : h.light_children) {
        const auto& J = d.light[static_cast<std::size_t>(j)].arc;
        CHECK(J.inside(h.arc));
        CHECK(mu.mass_in(J) <= params.M / params.light_ratio_divisor * J.length() * (1.0 + 1e-12));
      }
    }
    for (const auto& E : extract_bc_sets(d)) {
      double total = E.residual_length();
      for (const auto& g : E.gaps()) total += g.length();
      CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("carried-set arcs are bounded by the superlevel area") {
  AtomicMeasure delta({{Angle(0.0), 1.0}});
  auto d = corona_decompose(delta, {2.0, 14, 100.0});
  auto b = carried_area_bound(d, 0.1, 30);
  CHECK(b.dyadic_sum == doctest::Approx(1.0 - std::ldexp(1.0, -14)));
  CHECK(b.threshold == doctest::Approx(0.002));
  CHECK(b.area > 0.0);
  CHECK(std::isfinite(b.K));

  // The same K works across random measures.
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 6; ++trial) {
    auto mu = testing_support::random_measure(rng, 3 + trial);
    auto dm = corona_decompose(mu, {1.0, 12, 100.0});
    auto bm = carried_area_bound(dm, 0.1, 24);
    CHECK(bm.dyadic_sum <= 20.0 * bm.area);
  }
  CHECK_THROWS_AS(carried_area_bound(d, 0.0), RangeError);
}

TEST_CASE("sublevel area integral") {
  AtomicMeasure delta({{Angle(0.0), 1.0}});
  auto r = sublevel_area_integral(delta, 0.5, 1.0, 30);
  CHECK_FALSE(r.diverges);
  CHECK(r.value > 0.0);
  // The same sweep at the Poisson threshold log 2.
  CHECK(r.value == doctest::Approx(area_sweep(delta, std::log(2.0), 1.0).value));
  // A smaller level is a smaller set.
  CHECK(sublevel_area_integral(delta, 0.1, 1.0, 30).value < r.value);
  CHECK(sublevel_area_integral(AtomicMeasure(), 0.5, 1.0, 30).value == 0.0);
  CHECK_THROWS_AS(sublevel_area_integral(delta, 1.0, 1.0), RangeError);
  CHECK_THROWS_AS(sublevel_area_integral(delta, 0.0, 1.0), RangeError);
}

TEST_CASE("resolved generation") {
  CHECK(resolved_generation(AtomicMeasure()) == 0);
  CHECK(resolved_generation(AtomicMeasure({{Angle(0.3), 1.0}})) == 0);
  CHECK(resolved_generation(AtomicMeasure({{Angle(0.0), 1.0}, {Angle(0.5), 1.0}})) == 1);
  CHECK(resolved_generation(equally_spaced_atoms(16, 0.5)) == 4);
  CHECK(resolved_generation(cantor_measure({4.0, 5})) == 10);
}

TEST_CASE("chain pipelines") {
  SUBCASE("single atom is finite throughout") {
    AtomicMeasure delta({{Angle(0.25), 1.0}});
    for (const auto& r : {thm11_pipeline(delta), thm12_pipeline(delta, 0.3)}) {
      REQUIRE(r.conditions.size() == 3);
      for (const auto& c : r.conditions) {
        CHECK_FALSE(c.diverges);
        CHECK(std::isfinite(c.value));
      }
      CHECK(r.consistent);
    }
  }
  SUBCASE("zero measure is vacuous") {
    auto r = thm12_pipeline(AtomicMeasure(), 0.3);
    CHECK(r.conditions.empty());
    CHECK(r.consistent);
  }
  SUBCASE("Cantor measure below the power threshold") {
    // 2.2 < 2^{1/(1-0.3)}: the carried sets fail the (1-p)-power condition.
    auto r = thm12_pipeline(cantor_measure({2.2, 8}), 0.3);
    REQUIRE(r.conditions.size() == 3);
    CHECK(r.conditions[2].name == "carried-sets");
    CHECK(r.conditions[2].diverges);
    CHECK(r.consistent);
  }
  SUBCASE("Cantor measure well above every threshold") {
    auto r = thm12_pipeline(cantor_measure({8.0, 6}), 0.3);
    for (const auto& c : r.conditions) CHECK_FALSE(c.diverges);
    CHECK(r.consistent);
  }
  CHECK_THROWS_AS(thm12_pipeline(AtomicMeasure(), 0.5), RangeError);
}
