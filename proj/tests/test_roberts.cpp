#include <cmath>
#include <random>

#include "carleson/constructions.hpp"
#include "carleson/error.hpp"
#include "carleson/roberts.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace carleson;

namespace {

std::vector<Arc> dyadic_partition(int n) {
  std::vector<Arc> p;
  for (std::uint64_t k = 0; k < (std::uint64_t{1} << n); ++k) p.push_back(DyadicArc(n, k).arc());
  return p;
}

}  // namespace

TEST_CASE("grate single step") {
  auto e = GaugeFunction::entropy();
  auto zero = grate(AtomicMeasure(), dyadic_partition(2), 1.0, e);
  CHECK(zero.grated.empty());
  CHECK(zero.remainder.empty());

  AtomicMeasure delta({{Angle(0.0), 1.0}});
  auto r = grate(delta, dyadic_partition(2), 1.0, e);
  REQUIRE(r.heavy.size() == 1);
  CHECK(r.heavy[0].left().turns() == 0.0);
  CHECK(r.grated.total_mass() == doctest::Approx(0.25 * std::log(4.0)));
  CHECK(r.grated.total_mass() == doctest::Approx(0.346574).epsilon(1e-6));
  CHECK(r.remainder.total_mass() == doctest::Approx(0.653426).epsilon(1e-6));

  auto light = equally_spaced_atoms(16, 0.5);
  auto l = grate(light, dyadic_partition(2), 1.0, e);
  CHECK(l.grated == light);
  CHECK(l.remainder.empty());
}

TEST_CASE("roberts decomposition of a point mass") {
  auto e = GaugeFunction::entropy();
  auto grid = build_grid(e, 4);
  AtomicMeasure delta({{Angle(0.0), 1.0}});
  auto d = roberts_decompose(delta, e, grid, {1.0, 0, 3});
  REQUIRE(d.layers.size() == 3);
  // hand simulation: each layer is capped at φ(2^{-n}) for n = 2, 4, 8
  CHECK(d.layers[0].measure.total_mass() == doctest::Approx(0.25 * std::log(4.0)));
  CHECK(d.layers[1].measure.total_mass() == doctest::Approx(std::log(16.0) / 16.0));
  CHECK(d.layers[2].measure.total_mass() == doctest::Approx(std::log(256.0) / 256.0));
  double total = d.residual.total_mass();
  for (const auto& l : d.layers) total += l.measure.total_mass();
  CHECK(std::abs(total - 1.0) <= 1e-15);
  auto c = certify(d);
  CHECK(c.conserved);
  CHECK(c.layer_bounds);
  CHECK(c.nested);
  CHECK(c.refining);
  auto le = light_arc_entropy(d);
  CHECK(le.holds);

  auto none = roberts_decompose(delta, e, grid, {1.0, 0, 0});
  CHECK(none.residual == delta);
  CHECK_THROWS_AS(roberts_decompose(delta, e, grid, {1.0, 2, 3}), RangeError);
}

TEST_CASE("spread measure is entirely light") {
  auto e = GaugeFunction::entropy();
  auto grid = build_grid(e, 4);
  std::vector<Atom> atoms;
  for (int k = 0; k < 4096; ++k) atoms.push_back({Angle(k / 4096.0), 0.1 / 4096});
  AtomicMeasure spread(atoms);
  auto d = roberts_decompose(spread, e, grid, {1.0, 0, 4});
  CHECK(d.residual.empty());
  CHECK(d.layers[0].heavy.empty());
  for (int j0 : {0, 1, 2}) {
    auto rows = charges_bc_test(spread, e, grid, 1.0, {j0}, 2);
    CHECK(rows[0].residual_mass == 0.0);
  }
}

TEST_CASE("light entropy of the zero measure") {
  for (auto g : {GaugeFunction::entropy(), GaugeFunction::power(0.5)}) {
    auto grid = build_grid(g, 4);
    for (int j0 : {0, 1}) {
      auto d = roberts_decompose(AtomicMeasure(), g, grid, {1.0, j0, 3});
      auto le = light_arc_entropy(d);
      const int n = grid.generations[static_cast<std::size_t>(j0)];
      CHECK(le.value == doctest::Approx(std::ldexp(1.0, n) * g.phi(std::ldexp(1.0, -n))));
      CHECK(le.holds);
    }
  }
}

TEST_CASE("roberts invariants on random measures") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    auto mu = testing_support::random_measure(rng, 40);
    for (auto g : {GaugeFunction::entropy(), GaugeFunction::power(0.6)}) {
      const int depth = g.kind() == GaugeKind::entropy_log ? 5 : 12;
      auto grid = build_grid(g, depth);
      for (double C : {0.5, 1.0, 2.0}) {
        auto d = roberts_decompose(mu, g, grid, {C, 0, depth});
        auto c = certify(d);
        CHECK(c.conserved);
        CHECK(c.layer_bounds);
        CHECK(c.nested);
        auto le = light_arc_entropy(d);
        CHECK(le.holds);
      }
    }
  }
}

TEST_CASE("charging a point") {
  auto e = GaugeFunction::entropy();
  auto grid = build_grid(e, 5);
  AtomicMeasure delta({{Angle(0.0), 1.0}});
  auto point = ClosedSet::from_points({Angle(0.0)});
  auto rows = charges_bc_test(delta, e, grid, 1.0, {0, 1, 2}, 3, point);
  for (const auto& r : rows) {
    double caps = 0.0;
    for (int j = 0; j < 3; ++j) caps += e.phi(std::ldexp(1.0, -grid.generations[static_cast<std::size_t>(r.j0 + j)]));
    CHECK(r.residual_mass >= 1.0 - caps - 1e-15);
    CHECK(r.residual_mass > 0.4);
    CHECK(r.layered_mass_on_set + r.residual_mass == doctest::Approx(1.0));
  }
  CHECK(charges_bc_test(AtomicMeasure(), e, grid, 1.0, {0, 1}, 3)[1].residual_mass == 0.0);
}

TEST_CASE("residual carrier contains the residual") {
  auto mu = cantor_measure({4.0, 10});
  auto g = GaugeFunction::power(0.5);
  auto grid = build_grid(g, 16);
  auto d = roberts_decompose(mu, g, grid, {0.05, 0, 16});
  auto E = residual_carrier(d);
  for (const auto& a : d.residual.atoms()) CHECK(E.contains(a.position));
}
