#include "oracle_values.hpp"
#include "test_util.hpp"

#include "slicelab/distances.hpp"

#include <doctest.h>

#include <cmath>

using namespace slicelab;
using testutil::rel;

TEST_SUITE("distances") {
  TEST_CASE("containment margins") {
    const IntegrationConfig cfg = testutil::small_cfg();
    const auto a = contains_body(StarBody::euclidean_ball(3), StarBody::euclidean_ball(3, 2.0), cfg);
    CHECK(a.contained);
    CHECK(a.margin == doctest::Approx(0.5).epsilon(1e-12));
    const auto b = contains_body(StarBody::cube(2, 1.0), StarBody::euclidean_ball(2), cfg);
    CHECK_FALSE(b.contained);
    CHECK(b.margin == doctest::Approx(std::sqrt(2.0)).epsilon(1e-8));
    const auto c = contains_body(StarBody::lq_ball(4, 3.0), StarBody::lq_ball(4, 3.0), cfg);
    CHECK(c.margin == doctest::Approx(1.0).epsilon(1e-12));
  }

  TEST_CASE("witness consistency") {
    for (double p : {1.0, 2.0, 3.0, 8.0}) {
      const auto ball = Witness::builtin(StarBody::euclidean_ball(4, 1.7), p);
      REQUIRE(ball);
      CHECK(ball->consistency_error() <= 1e-6);
      const auto e = Witness::builtin(StarBody::ellipsoid({1.0, 2.0, 0.5}), p);
      REQUIRE(e);
      CHECK(e->consistency_error() <= 1e-6);
      const auto self = Witness::builtin(StarBody::lq_ball(3, p, 0.8), p);
      REQUIRE(self);
      CHECK(self->consistency_error() <= 1e-6);
    }
    CHECK(Witness::builtin(StarBody::cross_polytope(3), 1.0));
    CHECK_FALSE(Witness::builtin(StarBody::cross_polytope(3), 2.0));
    CHECK_FALSE(Witness::builtin(StarBody::cube(3, 1.0), 2.0));
    CHECK_THROWS_AS(Witness(StarBody::cube(2, 1.0), lp_ball_measure(2, 2.0), 2.0), InputError);
  }

  TEST_CASE("outer volume ratio") {
    const IntegrationConfig cfg = testutil::small_cfg();
    const StarBody k = StarBody::lq_ball(3, 3.0);
    const auto self = dovr_upper(k, 3.0, {*Witness::builtin(k, 3.0, "self")}, cfg);
    CHECK(self.dovr_upper == doctest::Approx(1.0).epsilon(1e-3));
    const auto square =
        dovr_upper(StarBody::cube(2, 1.0), 2.0, {*Witness::builtin(StarBody::euclidean_ball(2), 2.0, "ball")}, cfg);
    CHECK(rel(square.dovr_upper, oracle::square_dovr_disk) <= 1e-2);
    CHECK(square.scaling_used == doctest::Approx(std::sqrt(2.0)).epsilon(1e-8));
    const auto scaled = dovr_upper(StarBody::cube(2, 3.0), 2.0,
                                   {*Witness::builtin(StarBody::euclidean_ball(2), 2.0, "ball")}, cfg);
    CHECK(rel(scaled.dovr_upper, square.dovr_upper) <= 1e-6);
    for (int n = 2; n <= 6; ++n) {
      const StarBody bodies[] = {StarBody::cube(n, 1.0), StarBody::cross_polytope(n), StarBody::lq_ball(n, 1.5)};
      for (const auto& b : bodies) {
        const auto r = dovr_upper(
            b, 2.0, {*Witness::builtin(StarBody::euclidean_ball(n, b.bounding_radius()), 2.0, "ball")}, cfg);
        CHECK(r.dovr_upper <= std::sqrt(double(n)) + 1e-9);
      }
    }
  }

  TEST_CASE("homothety-restricted Banach-Mazur scaling") {
    const IntegrationConfig cfg = testutil::small_cfg();
    CHECK(dbm_scaling(StarBody::lq_ball(3, 4.0), StarBody::lq_ball(3, 4.0), cfg) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(dbm_scaling(StarBody::cube(2, 1.0), StarBody::euclidean_ball(2), cfg) ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-8));
    CHECK(dbm_scaling(StarBody::ellipsoid({1.0, 2.0}), StarBody::euclidean_ball(2), cfg) ==
          doctest::Approx(2.0).epsilon(1e-8));
  }

  TEST_CASE("Jensen step") {
    const IntegrationConfig cfg = testutil::small_cfg();
    const auto ball = jensen_check(StarBody::euclidean_ball(3), 2.0, cfg);
    CHECK(ball.lhs == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(ball.rhs == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(ball.holds);
    const auto sq = jensen_check(StarBody::cube(2, 1.0), 2.0, cfg);
    CHECK(sq.lhs == doctest::Approx(oracle::jensen_square_p2_lhs).epsilon(1e-6));
    CHECK(sq.rhs == doctest::Approx(oracle::jensen_square_p2_rhs).epsilon(1e-6));
    CHECK(sq.lhs > sq.rhs);
    const auto big = jensen_check(StarBody::cube(2, 3.0), 2.0, cfg);
    CHECK(big.lhs / big.rhs == doctest::Approx(sq.lhs / sq.rhs).epsilon(1e-9));
    for (int n = 2; n <= 6; ++n)
      for (double p : {1.0, 2.0, 4.0, 8.0}) CHECK(jensen_check(StarBody::lq_ball(n, 1.5), p, cfg).holds);
  }

  TEST_CASE("comparison of masses") {
    const IntegrationConfig cfg = testutil::small_cfg();
    const StarBody m = StarBody::lq_ball(3, 3.0);
    const auto shrunk = bp_compare(m.scaled(0.8), m, Density::constant(1.0), 3.0, StarBody::euclidean_ball(3), cfg);
    CHECK(shrunk.hypothesis_holds);
    CHECK(shrunk.status == CompareStatus::ok);
    CHECK(shrunk.a >= 1.0);
    const auto ball_cube =
        bp_compare(StarBody::euclidean_ball(3), StarBody::cube(3, 1.0), Density::constant(1.0), 2.0,
                   StarBody::euclidean_ball(3), cfg);
    CHECK(ball_cube.hypothesis_holds);
    CHECK(ball_cube.a == doctest::Approx(std::sqrt(3.0)).epsilon(1e-6));
    CHECK(ball_cube.conclusion_margin == doctest::Approx(3.0 * 8.0 - 4.0 * M_PI / 3.0).epsilon(2e-3));
    const auto same = bp_compare(m, m, Density::gaussian(1.0), 3.0, m, cfg);
    CHECK(same.status == CompareStatus::ok);
    const auto reversed = bp_compare(StarBody::cube(3, 1.0), StarBody::euclidean_ball(3), Density::constant(1.0),
                                     2.0, StarBody::euclidean_ball(3), cfg);
    CHECK(reversed.status == CompareStatus::hypothesis_violated);
    CHECK(reversed.to_json().at("restriction").is_string());
  }
}
