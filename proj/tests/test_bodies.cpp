#include "oracle_values.hpp"
#include "test_util.hpp"

#include "slicelab/bodies.hpp"
#include "slicelab/quad.hpp"
#include "slicelab/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

using namespace slicelab;
using testutil::rel;
using testutil::vec;

TEST_SUITE("bodies") {
  TEST_CASE("gauge values") {
    CHECK(StarBody::cube(3, 1.0).gauge(vec({2, 0, 0})) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(StarBody::lq_ball(2, 1.0).gauge(vec({0.3, 0.2})) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(StarBody::lq_ball(2, 4.0).gauge(vec({1, 1})) == doctest::Approx(std::pow(2.0, 0.25)).epsilon(1e-14));
    CHECK(StarBody::cross_polytope(3, 2.0).gauge(vec({1, 1, 1})) == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(StarBody::ellipsoid({1.0, 2.0}).gauge(vec({0, 2})) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(StarBody::euclidean_ball(2).gauge(vec({0, 0})) == 0.0);
  }

  TEST_CASE("radial values") {
    const double s = 1.0 / std::sqrt(2.0);
    CHECK(StarBody::euclidean_ball(4).radial(vec({0.5, 0.5, 0.5, 0.5})) == doctest::Approx(1.0));
    CHECK(StarBody::cube(2, 1.0).radial(vec({s, s})) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    const double t = 1.0 / std::sqrt(3.0);
    CHECK(StarBody::lq_ball(3, 1.0).radial(vec({t, t, t})) == doctest::Approx(t).epsilon(1e-14));
  }

  TEST_CASE("membership") {
    const StarBody ball = StarBody::euclidean_ball(2);
    CHECK(ball.contains(vec({0, 0})));
    CHECK_FALSE(ball.contains(vec({1.5, 0}), 0.0));
    CHECK(StarBody::cube(2, 1.0).contains(vec({1, 1}), 0.0));
    CHECK(ball.contains(vec({1.0 + 1e-10, 0}), 1e-9));
  }

  TEST_CASE("exact volumes") {
    CHECK(*StarBody::cube(3, 1.0).exact_volume() == doctest::Approx(8.0));
    CHECK(*StarBody::ellipsoid({1.0, 2.0}).exact_volume() == doctest::Approx(2.0 * M_PI));
    CHECK(*StarBody::lq_ball(2, 2.0).exact_volume() == doctest::Approx(M_PI));
    CHECK(*StarBody::lq_ball(4, 1.5).exact_volume() == doctest::Approx(oracle::vol_lq_n4_q1_5).epsilon(1e-13));
    CHECK(*StarBody::lq_ball(6, 4.0).exact_volume() == doctest::Approx(oracle::vol_lq_n6_q4).epsilon(1e-13));
    CHECK(*StarBody::cross_polytope(5).exact_volume() == doctest::Approx(oracle::vol_lq_n5_q1).epsilon(1e-13));
  }

  TEST_CASE("polar volume against closed forms") {
    IntegrationConfig cfg;
    cfg.sphere_samples = 65536;
    const double inf = std::numeric_limits<double>::infinity();
    const double expect[5][4] = {
        {oracle::vol_lq_n2_q1, oracle::vol_lq_n2_q2, oracle::vol_lq_n2_q4, oracle::vol_lq_n2_qinf},
        {oracle::vol_lq_n3_q1, oracle::vol_lq_n3_q2, oracle::vol_lq_n3_q4, oracle::vol_lq_n3_qinf},
        {oracle::vol_lq_n4_q1, oracle::vol_lq_n4_q2, oracle::vol_lq_n4_q4, oracle::vol_lq_n4_qinf},
        {oracle::vol_lq_n5_q1, oracle::vol_lq_n5_q2, oracle::vol_lq_n5_q4, oracle::vol_lq_n5_qinf},
        {oracle::vol_lq_n6_q1, oracle::vol_lq_n6_q2, oracle::vol_lq_n6_q4, oracle::vol_lq_n6_qinf}};
    const double qs[4] = {1.0, 2.0, 4.0, inf};
    for (int n = 2; n <= 6; ++n) {
      for (int k = 0; k < 4; ++k) {
        CAPTURE(n);
        CAPTURE(qs[k]);
        const auto v = volume(StarBody::lq_ball(n, qs[k]), cfg);
        CHECK(rel(v.value, expect[n - 2][k]) <= 5e-3);
      }
    }
    CHECK(volume(StarBody::ellipsoid({1.0, 1.5, 0.75}), cfg).value ==
          doctest::Approx(4.0 / 3.0 * M_PI * 1.125).epsilon(5e-3));
  }

  TEST_CASE("ray exits land on the boundary") {
    Rng rng(3);
    const std::vector<StarBody> bodies = {StarBody::lq_ball(3, 1.5), StarBody::lq_ball(3, 4.0),
                                          StarBody::cube(3, 0.7), StarBody::cross_polytope(3, 1.3),
                                          StarBody::ellipsoid({1.0, 0.5, 2.0})};
    for (const auto& body : bodies) {
      for (int k = 0; k < 20; ++k) {
        Vec c(3), u(3);
        for (int i = 0; i < 3; ++i) {
          c(i) = rng.normal();
          u(i) = rng.normal();
        }
        c *= 0.3 * body.radial(c / c.norm()) / c.norm();
        u /= u.norm();
        const double t = body.ray_exit(c, u);
        CHECK(body.gauge(c + t * u) == doctest::Approx(1.0).epsilon(1e-9));
      }
    }
  }

  TEST_CASE("homogeneity, symmetry and triangle inequality") {
    Rng rng(11);
    const std::vector<StarBody> bodies = {StarBody::lq_ball(4, 1.5),  StarBody::lq_ball(4, 3.0),
                                          StarBody::cube(4, 2.0),     StarBody::cross_polytope(4),
                                          StarBody::ellipsoid({1, 2, 3, 0.5}), StarBody::lq_ball(4, 0.5)};
    for (int k = 0; k < 100; ++k) {
      const StarBody& body = bodies[k % bodies.size()];
      Vec x(4), y(4);
      for (int i = 0; i < 4; ++i) {
        x(i) = rng.normal();
        y(i) = rng.normal();
      }
      const double lambda = rng.uniform(0.01, 10.0);
      const double gx = body.gauge(x);
      CHECK(std::abs(body.gauge(lambda * x) - lambda * gx) <= 1e-12 * (1.0 + lambda * gx));
      CHECK(body.gauge(-x) == gx);
      if (body.convex()) CHECK(body.gauge(x + y) <= gx + body.gauge(y) + 1e-12);
      const Vec theta = x / x.norm();
      CHECK(std::abs(body.radial(theta) * body.gauge(theta) - 1.0) <= 1e-12);
    }
  }

  TEST_CASE("one-dimensional bodies are intervals") {
    const StarBody interval = StarBody::cube(1, 0.5);
    CHECK(interval.gauge(vec({-0.25})) == doctest::Approx(0.5));
    CHECK(volume(interval, IntegrationConfig{}).value == doctest::Approx(1.0).epsilon(1e-14));
  }

  TEST_CASE("spec parsing") {
    using nlohmann::json;
    const StarBody b = StarBody::from_json(json::parse(R"({"type":"lq_ball","n":3,"q":2.5,"scale":1.0})"));
    CHECK(b.dim() == 3);
    CHECK(b.q() == 2.5);
    CHECK(StarBody::from_json(b.to_json()).to_json() == b.to_json());
    CHECK(StarBody::from_json(json::parse(R"({"type":"cube","n":4,"half_side":0.5})")).exact_volume().value() ==
          doctest::Approx(1.0));
    CHECK_THROWS_AS(StarBody::from_json(json::parse(R"({"type":"cube","n":4,"side":0.5})")), InputError);
    CHECK_THROWS_AS(StarBody::from_json(json::parse(R"({"type":"ellipsoid","axes":[1,-2]})")), InputError);
    CHECK_THROWS_AS(StarBody::from_json(json::parse(R"({"type":"blob","n":2})")), InputError);
  }

  TEST_CASE("invalid input") {
    CHECK_THROWS_AS(StarBody::cube(0, 1.0), InputError);
    CHECK_THROWS_AS(StarBody::lq_ball(2, -1.0), InputError);
    CHECK_THROWS_AS(StarBody::cross_polytope(2, 0.0), InputError);
    CHECK_THROWS_AS(StarBody::cube(3, 1.0).gauge(vec({1, 2})), DimensionError);
  }

  TEST_CASE("custom bodies") {
    const StarBody diamond = StarBody::custom(
        2, [](const Vec& x) { return std::abs(x(0)) + std::abs(x(1)); }, 1.0);
    CHECK(diamond.gauge(vec({0.3, 0.2})) == doctest::Approx(0.5));
    IntegrationConfig cfg;
    CHECK(volume(diamond, cfg).value == doctest::Approx(2.0).epsilon(1e-3));
    CHECK_THROWS(StarBody::custom(
        2, [](const Vec& x) { return x.norm(); }, 0.0));
  }
}
