#include <cmath>
#include <random>

#include "carleson/circle.hpp"
#include "carleson/error.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace carleson;

TEST_CASE("measure of arc uses half-open convention") {
  AtomicMeasure mu({{Angle(0.0), 1.0}});
  CHECK(measure_of_arc(mu, Arc(Angle(0.0), 0.5)) == 1.0);
  CHECK(measure_of_arc(mu, Arc(Angle(0.5), 0.5)) == 0.0);
  AtomicMeasure nu({{Angle(0.1), 0.3}, {Angle(0.6), 0.7}});
  CHECK(measure_of_arc(nu, Arc(Angle(0.0), 0.5)) == doctest::Approx(0.3));
  // wrapping arc [0.9, 1.15)
  CHECK(measure_of_arc(nu, Arc(Angle(0.9), 0.25)) == doctest::Approx(0.3));
  CHECK(measure_of_arc(mu, Arc(Angle(0.75), 0.25)) == 0.0);
  CHECK(measure_of_arc(mu, Arc(Angle(0.75), 0.5)) == 1.0);
}

TEST_CASE("restrict and scale") {
  AtomicMeasure mu({{Angle(0.1), 2.0}, {Angle(0.7), 1.0}});
  auto r = restrict_and_scale(mu, Arc(Angle(0.0), 0.5), 0.25);
  REQUIRE(r.size() == 1);
  CHECK(r[0].mass == 0.5);
  CHECK(restrict_and_scale(mu, Arc(Angle(0.0), 0.5), 0.0).empty());
  CHECK(restrict_and_scale(mu, Arc(Angle(0.0), 0.5), 1.0).total_mass() == 2.0);
}

TEST_CASE("atomic measure merges duplicates and rejects negative masses") {
  AtomicMeasure mu({{Angle(0.25), 1.0}, {Angle(1.25), 0.5}, {Angle(0.5), 0.0}});
  REQUIRE(mu.size() == 1);
  CHECK(mu[0].mass == 1.5);
  CHECK_THROWS_AS(AtomicMeasure({{Angle(0.1), -1.0}}), RangeError);
  CHECK_THROWS_AS(AtomicMeasure({{Angle(0.1), NAN}}), RangeError);
}

TEST_CASE("angles reduce into [0,1)") {
  CHECK(Angle(-1e-18).turns() == 0.0);
  CHECK(Angle(1.0).turns() == 0.0);
  CHECK(Angle(-0.25).turns() == 0.75);
  CHECK(circular_offset(Angle(0.9), Angle(0.1)) == doctest::Approx(0.2));
}

TEST_CASE("dyadic partition totality and additivity") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    auto mu = testing_support::random_measure(rng, 50);
    const double total = mu.total_mass();
    for (int n : {0, 1, 3, 7, 12, 20}) {
      double sum = 0.0;
      std::size_t count = 0;
      if (n <= 12) {
        for (std::uint64_t k = 0; k < (std::uint64_t{1} << n); ++k) {
          DyadicArc I(n, k);
          sum += mu.mass_in(I);
          auto [lo, hi] = mu.index_range(I);
          count += hi - lo;
        }
        CHECK(count == mu.size());
        CHECK(std::abs(sum - total) <= 1e-12 * total);
      }
      for (const auto& a : mu.atoms()) {
        auto I = DyadicArc::containing(a.position, n);
        CHECK(I.contains(a.position));
        CHECK(a.position.turns() >= I.left());
        CHECK(a.position.turns() < I.right());
      }
    }
  }
}

TEST_CASE("restrict_and_scale total mass is c times arc mass") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    auto mu = testing_support::random_measure(rng, 30);
    Arc I(Angle(u(rng)), 0.01 + 0.98 * u(rng));
    const double c = 3.0 * u(rng);
    const double expect = c * mu.mass_in(I);
    CHECK(restrict_and_scale(mu, I, c).total_mass() == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("dyadic arcs meeting a closed set") {
  auto point = ClosedSet::from_points({Angle(0.0)});
  auto arcs = dyadic_arcs_meeting(point, 2);
  REQUIRE(arcs.size() == 2);
  CHECK(arcs[0].index == 0);
  CHECK(arcs[1].index == 3);

  auto full = ClosedSet::full_circle();
  CHECK(dyadic_arcs_meeting(full, 5).size() == 32);

  ClosedSet two({Arc(Angle(0.0), 0.5), Arc(Angle(0.5), 0.5)}, {});
  CHECK(dyadic_arcs_meeting(two, 1).size() == 2);
  CHECK(two.contains(Angle(0.5)));
  CHECK(!two.contains(Angle(0.25)));

  auto census = dyadic_meeting_census(point, 30);
  CHECK(census.counts[0] == 1);
  for (int n = 1; n <= 30; ++n) CHECK(census.counts[static_cast<std::size_t>(n)] == 2);
}

TEST_CASE("closed set bookkeeping") {
  CHECK_THROWS_AS(ClosedSet({Arc(Angle(0.0), 0.5)}, {}), RangeError);
  ClosedSet E({Arc(Angle(0.25), 0.5)}, {Arc(Angle(0.75), 0.5)});
  CHECK(E.has_residual());
  CHECK(E.residual_length() == 0.5);
  CHECK(E.meets(DyadicArc(2, 0)));
  CHECK(!E.meets(DyadicArc(3, 3)));
  CHECK(E.meets(DyadicArc(2, 1)));  // closure touches 1/4
}

TEST_CASE("whitney decomposition tiles the arc") {
  Arc J(Angle(0.125), 0.5);
  auto p1 = whitney_decompose(J, 1);
  REQUIRE(p1.size() == 3);
  CHECK(p1[0].arc.length() == 0.125);
  CHECK(p1[0].remainder);
  CHECK(p1[1].arc.length() == 0.25);
  CHECK(p1[2].arc.length() == 0.125);
  CHECK(whitney_decompose(J, 0).size() == 1);

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    Arc K(Angle(u(rng)), 1e-3 + 0.99 * u(rng));
    const int depth = static_cast<int>(u(rng) * 40);
    auto pieces = whitney_decompose(K, depth);
    double total = 0.0;
    double cursor = K.left().turns();
    for (const auto& w : pieces) {
      CHECK(w.arc.left().turns() == Angle(cursor).turns());
      cursor += w.arc.length();
      total += w.arc.length();
      if (!w.remainder && w.level != 0) {
        CHECK(w.arc.length() == doctest::Approx(std::ldexp(K.length(), -(std::abs(w.level) + 2))));
      }
    }
    CHECK(total == doctest::Approx(K.length()).epsilon(1e-14));
  }
  CHECK_THROWS_AS(whitney_decompose(Arc(Angle(0.0), 1e-20), 3), RangeError);
}
