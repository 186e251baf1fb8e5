#include <cmath>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "carleson/error.hpp"
#include "carleson/gauge.hpp"
#include "doctest.h"

using namespace carleson;

TEST_CASE("phi and lambda closed forms") {
  auto e = GaugeFunction::entropy();
  CHECK(e.phi(1.0) == 0.0);
  CHECK(e.phi(0.0) == 0.0);
  CHECK(e.phi(0.5) == doctest::Approx(0.5 * std::log(2.0)));
  CHECK(e.lambda(0.25) == 0.25);
  auto p = GaugeFunction::power(0.5);
  CHECK(p.phi(0.25) == doctest::Approx(0.5));
  CHECK(p.lambda(0.25) == doctest::Approx(0.25));
  auto pi = GaugeFunction::power(0.5, PhiVariant::identity);
  CHECK(pi.phi(0.25) == doctest::Approx(0.25));
  CHECK_THROWS_AS(GaugeFunction::power(1.2), RangeError);
}

TEST_CASE("phi1 matches the integral of 1/lambda") {
  // Independent oracle: tanh-sinh over t directly in shells.
  auto oracle = [](const GaugeFunction& g, double t) {
    double s = 0.0;
    double a = t;
    while (a < 1.0) {
      const double b = std::min(1.0, 2.0 * a);
      s += boost::math::quadrature::tanh_sinh<double>().integrate([&](double x) { return 1.0 / g.lambda(x); }, a, b);
      a = b;
    }
    return s;
  };
  auto e = GaugeFunction::entropy();
  auto pi = GaugeFunction::power(0.3, PhiVariant::identity);
  for (int k = 1; k <= 40; k += 3) {
    const double t = std::ldexp(1.0, -k);
    CHECK(oracle(e, t) == doctest::Approx(e.phi1(t)).epsilon(1e-6));
    CHECK(oracle(pi, t) == doctest::Approx(pi.phi1(t)).epsilon(1e-6));
    CHECK(e.lambda_integral(t, 1.0) == doctest::Approx(e.phi1(t)).epsilon(1e-12));
  }
}

TEST_CASE("custom lambda table reproduces the entropy gauge") {
  auto c = GaugeFunction::custom([](double t) { return t; }, 1e-13);
  for (int k = 1; k <= 40; ++k) {
    const double t = std::ldexp(1.0, -k);
    CHECK(c.phi1(t) == doctest::Approx(-std::log(t)).epsilon(1e-6));
    CHECK(c.phi(t) == doctest::Approx(-t * std::log(t)).epsilon(1e-6));
  }
  auto g = build_grid(c, 4);
  CHECK(g.generations == std::vector<int>{1, 2, 4, 8});

  std::vector<double> ts, ls;
  for (int k = 0; k <= 30; ++k) {
    ts.push_back(std::ldexp(1.0, -k));
    ls.push_back(std::pow(ts.back(), 1.5) / 0.5);
  }
  auto tab = GaugeFunction::custom(ts, ls);
  for (int k = 2; k <= 40; k += 5) {
    const double t = std::ldexp(1.0, -k);
    CHECK(tab.phi1(t) == doctest::Approx(std::pow(t, -0.5) - 1.0).epsilon(1e-6));
  }
}

TEST_CASE("phi1 decreasing, phi increasing up to t*") {
  for (auto g : {GaugeFunction::entropy(), GaugeFunction::power(0.4), GaugeFunction::power(0.4, PhiVariant::identity)}) {
    double prev1 = HUGE_VAL;
    double prev = -1.0;
    const double ts = g.increasing_up_to();
    for (int s = 40 * 16; s >= 0; --s) {
      const double t = std::exp2(-s / 16.0);
      CHECK(g.phi1(t) <= prev1);
      prev1 = g.phi1(t);
      if (t <= ts) {
        CHECK(g.phi(t) >= prev);
        prev = g.phi(t);
      }
    }
  }
  CHECK(GaugeFunction::entropy().increasing_up_to() == doctest::Approx(std::exp(-1.0)));
}

TEST_CASE("grids of the standard gauges") {
  auto e = build_grid(GaugeFunction::entropy(), 4);
  CHECK(e.generations == std::vector<int>{2, 4, 8, 16});
  CHECK(e.c_lo == doctest::Approx(1.0));
  CHECK(e.c_hi == doctest::Approx(1.0));
  CHECK(e.grid_constant == doctest::Approx(2.0));
  CHECK_THROWS_AS(build_grid(GaugeFunction::entropy(), 6), RangeError);

  auto pg = GaugeFunction::power(0.7);
  auto p = build_grid(pg, 5);
  CHECK(p.generations == std::vector<int>{1, 2, 3, 4, 5});
  CHECK(p.c_lo > 0.0);
  CHECK(p.c_hi / p.c_lo <= 8.0);
  // Quadrature oracle for the scaling integrals.
  for (std::size_t j = 0; j + 1 < p.generations.size(); ++j) {
    const double a = std::ldexp(1.0, -p.generations[j + 1]);
    const double b = std::ldexp(1.0, -p.generations[j]);
    const double q = boost::math::quadrature::tanh_sinh<double>().integrate([&](double t) { return 1.0 / pg.lambda(t); }, a, b);
    const double r = q / pg.phi1(b);
    CHECK(r >= p.c_lo * (1 - 1e-9));
    CHECK(r <= p.c_hi * (1 + 1e-9));
  }
}

TEST_CASE("regularity constants") {
  auto re = check_regularity(GaugeFunction::entropy());
  CHECK(re.g2_lo == doctest::Approx(1.0));
  CHECK(re.g2_hi == doctest::Approx(2.0));
  CHECK(std::isfinite(re.g3));
  CHECK(re.g3 == doctest::Approx(4.0).epsilon(1e-9));
  CHECK(re.violations.empty());
  for (double a : {0.2, 0.5, 0.8}) {
    auto rp = check_regularity(GaugeFunction::power(a));
    CHECK(rp.g3 == doctest::Approx(1.0 / (1.0 - std::pow(2.0, -a))).epsilon(1e-9));
  }
  RegularityCeilings tight;
  tight.geometric = 2.0;
  CHECK(!check_regularity(GaugeFunction::entropy(), tight).violations.empty());
}
