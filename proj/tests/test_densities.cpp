#include "oracle_values.hpp"
#include "test_util.hpp"

#include "slicelab/densities.hpp"
#include "slicelab/rng.hpp"
#include "slicelab/special.hpp"

#include <doctest.h>

#include <cmath>

using namespace slicelab;
using testutil::vec;

TEST_SUITE("densities") {
  TEST_CASE("evaluators") {
    CHECK(Density::constant(1.0)(vec({5, -3})) == 1.0);
    CHECK(Density::gaussian(1.0)(vec({0, 0, 0})) == 1.0);
    CHECK(Density::radial_power(2.0)(vec({3, 4})) == doctest::Approx(25.0).epsilon(1e-15));
    CHECK(Density::exp_l1(2.0)(vec({1, -1})) == doctest::Approx(std::exp(-1.0)));
    const Density mix = Density::mixture({Density::constant(1.0), Density::radial_power(1.0)}, {1.0, 3.0});
    CHECK(mix(vec({0, 2})) == doctest::Approx(0.25 + 0.75 * 2.0));
  }

  TEST_CASE("evenness is exact") {
    Rng rng(5);
    const Density fs[] = {Density::gaussian(0.7), Density::radial_power(0.5), Density::exp_l1(1.3),
                          Density::mixture({Density::gaussian(0.3), Density::constant(2.0)}, {0.2, 0.8})};
    for (const auto& f : fs) {
      for (int k = 0; k < 50; ++k) {
        Vec x(3);
        for (int i = 0; i < 3; ++i) x(i) = rng.normal();
        CHECK(f(x) == f(-x));
      }
    }
  }

  TEST_CASE("rejected parameters") {
    CHECK_THROWS_AS(Density::gaussian(0.0), InputError);
    CHECK_THROWS_AS(Density::radial_power(-1.0), InputError);
    CHECK_THROWS_AS(Density::constant(-1.0), InputError);
    CHECK_THROWS_AS(Density::mixture({Density::constant(1.0)}, {-1.0}), InputError);
    CHECK_THROWS_AS(Density::custom(
                        1, [](const Vec& x) { return x(0) > 0 ? 1.0 : 0.5; }, true),
                    InputError);
  }

  TEST_CASE("spec round trip") {
    using nlohmann::json;
    const json spec = json::parse(
        R"({"type":"mixture","parts":[{"type":"gaussian","sigma":1.0},{"type":"constant","c":2.0}],"weights":[0.5,0.5]})");
    const Density f = Density::from_json(spec);
    CHECK(f(vec({0.0, 0.0})) == doctest::Approx(1.5));
    CHECK(Density::from_json(f.to_json()).to_json() == f.to_json());
    CHECK_THROWS_AS(Density::from_json(json::parse(R"({"type":"gaussian","sigma":1,"mu":0})")), InputError);
  }

  TEST_CASE("measure gauges") {
    const auto l1 = lp_ball_measure(2, 1.0);
    CHECK(gauge_from_measure(l1, 1.0, vec({1, 1})) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(gauge_from_measure(lp_ball_measure(2, 3.0), 3.0, vec({1, 0})) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(gauge_from_measure(lp_ball_measure(2, 1.0), 1.0, vec({0.3, 0.2})) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(gauge_from_measure(lp_ball_measure(3, 2.0), 2.0, vec({1, 2, 2})) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(gauge_from_measure(lp_ball_measure(2, 4.0), 4.0, vec({1, 1})) ==
          doctest::Approx(std::pow(2.0, 0.25)).epsilon(1e-15));
    CHECK(euclidean_ball_measure(2, 2.0).uniform_weight() == doctest::Approx(oracle::c_2_2).epsilon(1e-14));
    CHECK(gauge_from_measure(euclidean_ball_measure(3, 2.0), 2.0, vec({0, 0, 2})) ==
          doctest::Approx(2.0).epsilon(1e-6));
    CHECK(gauge_from_measure(euclidean_ball_measure(4, 3.5), 3.5, vec({0, 0, 0, 0})) == 0.0);
  }

  TEST_CASE("total masses") {
    CHECK(total_mass(lp_ball_measure(3, 2.0)) == doctest::Approx(3.0));
    CHECK(total_mass(DirectionMeasure(2, {}, 1.0)) == doctest::Approx(2.0 * M_PI));
    CHECK(total_mass(DirectionMeasure(3, {}, 1.0)) == doctest::Approx(4.0 * M_PI));
    CHECK(sphere_area(5) == doctest::Approx(oracle::sphere_area_5).epsilon(1e-14));
  }

  TEST_CASE("l_p measure reproduces the l_p gauge") {
    Rng rng(9);
    for (int n = 1; n <= 6; ++n) {
      for (double p : {1.0, 1.5, 2.0, 3.0, 4.0, 8.0}) {
        const auto m = lp_ball_measure(n, p);
        const StarBody ball = StarBody::lq_ball(n, p);
        for (int k = 0; k < 40; ++k) {
          Vec x(n);
          for (int i = 0; i < n; ++i) x(i) = rng.normal();
          const double g = ball.gauge(x);
          CHECK(std::abs(gauge_from_measure(m, p, x) - g) <= 1e-10 * g);
          CHECK(gauge_from_measure(m, p, 2.5 * x) == doctest::Approx(2.5 * gauge_from_measure(m, p, x)).epsilon(1e-12));
        }
      }
    }
  }

  TEST_CASE("uniform measure reproduces the Euclidean norm") {
    Rng rng(10);
    for (int n : {2, 3, 4}) {
      for (double p : {1.0, 2.0, 3.5}) {
        const auto m = euclidean_ball_measure(n, p);
        Vec x(n);
        for (int i = 0; i < n; ++i) x(i) = rng.normal();
        CHECK(std::abs(gauge_from_measure(m, p, x) - x.norm()) <= 1e-3 * x.norm());
      }
    }
  }

  TEST_CASE("ellipsoid measure") {
    const auto m = ellipsoid_measure({1.0, 2.0, 0.5}, 3.0);
    const StarBody e = StarBody::ellipsoid({1.0, 2.0, 0.5});
    const Vec x = vec({0.3, -1.2, 0.4});
    CHECK(gauge_from_measure(m, 3.0, x) == doctest::Approx(e.gauge(x)).epsilon(1e-10));
  }
}
