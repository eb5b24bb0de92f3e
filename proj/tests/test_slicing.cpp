#include "oracle_values.hpp"
#include "test_util.hpp"

#include "slicelab/slicing.hpp"

#include <doctest.h>

#include <cmath>

using namespace slicelab;
using testutil::rel;
using testutil::vec;

TEST_SUITE("slicing") {
  TEST_CASE("maximal sections") {
    const IntegrationConfig cfg = testutil::small_cfg();
    const auto ball_c = max_section(StarBody::euclidean_ball(3), Density::constant(1.0), SliceMode::central, cfg);
    CHECK(rel(ball_c.value.value, M_PI) <= 1e-3);
    const auto ball_a = max_section(StarBody::euclidean_ball(3), Density::constant(1.0), SliceMode::affine, cfg);
    CHECK(rel(ball_a.value.value, M_PI) <= 1e-3);
    CHECK(std::abs(ball_a.offset) <= 1e-3);
    const auto square = max_section(StarBody::cube(2, 0.5), Density::constant(1.0), SliceMode::central, cfg);
    CHECK(rel(square.value.value, std::sqrt(2.0)) <= 1e-6);
    CHECK(std::abs(std::abs(square.direction(0)) - std::abs(square.direction(1))) <= 1e-4);
  }

  TEST_CASE("slicing constants") {
    const IntegrationConfig cfg = testutil::small_cfg();
    const auto disk = slicing_constant(StarBody::euclidean_ball(2), Density::constant(1.0), SliceMode::central, cfg);
    REQUIRE(disk.central_constant);
    CHECK(*disk.central_constant == doctest::Approx(oracle::disk_central_slicing).epsilon(1e-6));
    CHECK_FALSE(disk.affine_constant);
    const auto ball = slicing_constant(StarBody::euclidean_ball(3), Density::constant(1.0), SliceMode::central, cfg);
    CHECK(rel(*ball.central_constant, oracle::ball3_central_slicing) <= 1e-3);
    const auto central = slicing_constant(StarBody::lq_ball(3, 1.5), Density::gaussian(0.7), SliceMode::central, cfg);
    const auto affine = slicing_constant(StarBody::lq_ball(3, 1.5), Density::gaussian(0.7), SliceMode::affine, cfg);
    CHECK(*affine.affine_constant <= *central.central_constant * (1.0 + 1e-3));
    CHECK(*central.central_constant <= 2.0 * std::sqrt(3.0));
  }

  TEST_CASE("moment functional") {
    IntegrationConfig cfg;
    for (double q : {0.0, 0.5, 3.0, 7.5, -0.5}) {
      CHECK(moment_functional(indicator_profile(1.0), q, cfg) == doctest::Approx(1.0).epsilon(1e-9));
      CHECK(moment_functional(indicator_profile(0.37), q, cfg) == doctest::Approx(0.37).epsilon(1e-9));
    }
    CHECK(moment_functional(tent_profile(1.0), 0.0, cfg) == doctest::Approx(oracle::tent_F0).epsilon(1e-12));
    CHECK(moment_functional(tent_profile(1.0), 1.0, cfg) == doctest::Approx(oracle::tent_F1).epsilon(1e-12));
    CHECK(moment_functional(tent_profile(1.0), 3.0, cfg) == doctest::Approx(oracle::tent_F3).epsilon(1e-12));
    CHECK(moment_functional(tent_profile(1.0), -0.5, cfg) == doctest::Approx(oracle::tent_Fm05).epsilon(1e-8));
    Profile1D bad = step_profile({-1.0, 0.0, 1.0}, {0.5, 1.5});
    CHECK_THROWS_AS(moment_functional(bad, 1.0, cfg), InputError);
    CHECK_THROWS_AS(moment_functional(tent_profile(1.0), -1.0, cfg), InputError);
  }

  TEST_CASE("moment functional is non-decreasing") {
    IntegrationConfig cfg;
    for (std::uint64_t k = 0; k < 20; ++k) {
      const Profile1D g = random_step_profile(7, k);
      double prev = moment_functional(g, 0.0, cfg);
      for (double q = 0.5; q <= 8.0; q += 0.5) {
        const double f = moment_functional(g, q, cfg);
        CHECK(f >= prev - 1e-6);
        prev = f;
      }
    }
  }

  TEST_CASE("section/moment inequality cases") {
    const IntegrationConfig cfg = testutil::small_cfg();
    for (double p : {1.0, 2.0, 5.0}) {
      const auto r = lemma16_check(StarBody::cube(3, 0.5), Density::constant(1.0), p, vec({1, 0, 0}), cfg);
      CHECK(std::abs(r.lhs / r.rhs - 1.0) <= 1e-3);
      CHECK(r.holds);
    }
    const auto disk = lemma16_check(StarBody::euclidean_ball(2), Density::constant(1.0), 1.0, vec({1, 0}), cfg);
    CHECK(disk.lhs == doctest::Approx(32.0 / 3.0).epsilon(1e-3));
    CHECK(disk.rhs == doctest::Approx(M_PI * M_PI).epsilon(1e-9));
    CHECK(disk.holds);
    const auto zero = lemma16_check(StarBody::cube(2, 1.0), Density::constant(0.0), 2.0, vec({1, 0}), cfg);
    CHECK(zero.lhs == 0.0);
    CHECK(zero.rhs == 0.0);
    const auto half = lemma16_check(StarBody::lq_ball(3, 3.0), Density::exp_l1(0.5), 0.5, vec({0.6, 0.8, 0}), cfg);
    CHECK(half.holds);
  }

  TEST_CASE("affine slicing ratio") {
    const IntegrationConfig cfg = testutil::small_cfg();
    const StarBody k = StarBody::lq_ball(3, 4.0);
    const auto r = thm17_ratio(k, Density::constant(1.0), 4.0, 1.0, cfg);
    CHECK(std::isfinite(r.c_hat));
    CHECK(r.c_hat > 0.0);
    CHECK(r.c_hat <= 3.0);
    const auto scaled = thm17_ratio(k.scaled(2.5), Density::constant(1.0), 4.0, 1.0, cfg);
    CHECK(rel(scaled.c_hat, r.c_hat) <= 1e-6);
    const auto low = thm17_ratio(k, Density::constant(1.0), 1.5, 1.0, cfg);
    CHECK_FALSE(low.notes.empty());
    CHECK_THROWS_AS(thm17_ratio(k, Density::constant(1.0), 4.0, 0.5, cfg), InputError);
  }
}
