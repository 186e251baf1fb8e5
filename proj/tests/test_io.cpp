#include <sstream>

#include "carleson/constructions.hpp"
#include "carleson/error.hpp"
#include "carleson/io.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace carleson;

TEST_CASE("measure text round trip") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    auto mu = testing_support::random_measure(rng, trial);
    std::stringstream s;
    write_measure(s, mu);
    CHECK(read_measure(s) == mu);
  }
  std::stringstream empty("# atomic-measure v1\n");
  CHECK(read_measure(empty).empty());
  std::stringstream merged("# atomic-measure v1\n0.25 1\n\n# note\n0.25 2\n0.5 0\n");
  auto m = read_measure(merged);
  REQUIRE(m.size() == 1);
  CHECK(m[0].mass == 3.0);
}

TEST_CASE("measure text errors") {
  std::stringstream no_header("0.1 1\n");
  CHECK_THROWS_AS(read_measure(no_header), ParseError);
  std::stringstream bad_number("# atomic-measure v1\n0.1 x\n");
  CHECK_THROWS_AS(read_measure(bad_number), ParseError);
  std::stringstream extra("# atomic-measure v1\n0.1 1 2\n");
  CHECK_THROWS_AS(read_measure(extra), ParseError);
  std::stringstream outside("# atomic-measure v1\n1.5 1\n");
  CHECK_THROWS_AS(read_measure(outside), RangeError);
  std::stringstream negative("# atomic-measure v1\n0.5 -1\n");
  CHECK_THROWS_AS(read_measure(negative), RangeError);
  CHECK_THROWS_AS(load_measure("/nonexistent/mu.txt"), IoError);
}

TEST_CASE("closed set text round trip") {
  for (const auto& E : {cantor_set({4.0, 5}).set, cantor_set({2.5, 3}).set, pruned_cantor(0.3, 1.15, 6).set,
                        ClosedSet::from_points({Angle(0.0), Angle(0.3)}), ClosedSet::full_circle(), ClosedSet()}) {
    std::stringstream s;
    write_closed_set(s, E);
    auto F = read_closed_set(s);
    REQUIRE(F.gaps().size() == E.gaps().size());
    REQUIRE(F.residual().size() == E.residual().size());
    for (std::size_t i = 0; i < E.gaps().size(); ++i) {
      CHECK(F.gaps()[i].left().turns() == E.gaps()[i].left().turns());
      CHECK(F.gaps()[i].length() == E.gaps()[i].length());
    }
    for (std::size_t i = 0; i < E.residual().size(); ++i) {
      CHECK(F.residual()[i].left().turns() == E.residual()[i].left().turns());
      CHECK(F.residual()[i].length() == E.residual()[i].length());
    }
  }
  std::stringstream bad("# closed-set v1\nhole 0 1\n");
  CHECK_THROWS_AS(read_closed_set(bad), ParseError);
  std::stringstream short_total("# closed-set v1\ngap 0 0.5\n");
  CHECK_THROWS_AS(read_closed_set(short_total), RangeError);
}

TEST_CASE("lambda table") {
  std::stringstream s("t,lambda\n0.001, 0.001\n0.5,0.5\n1,1\n");
  auto [t, l] = read_lambda_csv(s);
  REQUIRE(t.size() == 3);
  CHECK(t[1] == 0.5);
  CHECK(l[2] == 1.0);
  std::stringstream one("t,lambda\n0.5,0.5\n");
  CHECK_THROWS_AS(read_lambda_csv(one), ParseError);
}
