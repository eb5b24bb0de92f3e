#include "oracle_values.hpp"
#include "test_util.hpp"

#include "slicelab/moments.hpp"
#include "slicelab/rng.hpp"

#include <doctest.h>

#include <cmath>

using namespace slicelab;
using testutil::rel;
using testutil::vec;

TEST_SUITE("moments") {
  TEST_CASE("closed-form moments") {
    IntegrationConfig cfg;
    CHECK(rel(moment(StarBody::euclidean_ball(2), Density::constant(1.0), 1.0, vec({1, 0}), cfg).value,
              oracle::disk_moment_p1) <= 1e-3);
    for (int n : {2, 3}) {
      for (double p : {1.0, 2.0, 5.0}) {
        Vec e = Vec::Zero(n);
        e(0) = 1.0;
        const double exact = std::pow(2.0, -p) / (p + 1.0);
        CHECK(rel(moment(StarBody::cube(n, 0.5), Density::constant(1.0), p, e, cfg).value, exact) <= 1e-3);
      }
    }
    CHECK(moment(StarBody::cube(2, 1.0), Density::constant(0.0), 2.0, vec({1, 0}), cfg).value == 0.0);
    CHECK_THROWS_AS(moment(StarBody::cube(2, 1.0), Density::constant(1.0), 2.0, vec({1, 1}), cfg), InputError);
  }

  TEST_CASE("cube minimum at an axis for p = 2") {
    IntegrationConfig cfg = testutil::small_cfg();
    cfg.sphere_samples = 65536;
    const auto r = min_moment(StarBody::cube(3, 0.5), Density::constant(1.0), 2.0, cfg);
    CHECK(rel(r.value.value, 1.0 / 12.0) <= 1e-3);
    // Every direction gives 1/12 (the cube is isotropic), so ties resolve lexicographically.
    CHECK(r.relative_spread <= 1e-3);
  }

  TEST_CASE("cube first moment is least off the axes") {
    const IntegrationConfig cfg = testutil::small_cfg();
    const auto r2 = min_moment(StarBody::cube(2, 0.5), Density::constant(1.0), 1.0, cfg);
    CHECK(rel(r2.value.value, oracle::cube2_min_p1) <= 1e-3);
    CHECK(std::abs(std::abs(r2.direction(0)) - std::abs(r2.direction(1))) <= 1e-3);
    const auto r3 = min_moment(StarBody::cube(3, 0.5), Density::constant(1.0), 1.0, cfg);
    CHECK(rel(r3.value.value, oracle::cube3_min_p1) <= 1e-3);
    CHECK(r3.normalized_gamma == doctest::Approx(r3.value.value).epsilon(1e-3));
  }

  TEST_CASE("ball is rotation invariant") {
    IntegrationConfig cfg = testutil::small_cfg();
    cfg.sphere_samples = 65536;
    const auto r = min_moment(StarBody::euclidean_ball(3), Density::constant(1.0), 3.0, cfg);
    CHECK(r.relative_spread <= 1e-3);
    Rng rng(4);
    for (int k = 0; k < 10; ++k) {
      Vec xi(3);
      for (int i = 0; i < 3; ++i) xi(i) = rng.normal();
      xi /= xi.norm();
      CHECK(rel(moment(StarBody::euclidean_ball(3), Density::constant(1.0), 3.0, xi, cfg).value, r.value.value) <=
            2e-3);
    }
  }

  TEST_CASE("ellipse minimizer on the short axis") {
    const auto r = min_moment(StarBody::ellipsoid({1.0, 4.0}), Density::constant(1.0), 2.0, testutil::small_cfg());
    CHECK(std::abs(r.direction(0)) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(rel(r.value.value, M_PI * 4.0 / 4.0) <= 1e-3);
  }

  TEST_CASE("gamma ratio") {
    const IntegrationConfig cfg = testutil::small_cfg();
    CHECK(rel(gamma_ratio(StarBody::euclidean_ball(2), Density::constant(1.0), 2.0, cfg), oracle::disk_gamma_p2) <=
          1e-3);
    const double g1 = gamma_ratio(StarBody::lq_ball(3, 1.5), Density::gaussian(1.0), 3.0, cfg);
    const double g2 = gamma_ratio(StarBody::lq_ball(3, 1.5, 2.5), Density::gaussian(2.5), 3.0, cfg);
    CHECK(rel(g2, g1) <= 1e-6);
    CHECK(g1 <= 3.0 * std::sqrt(3.0 * 3.0));
  }

  TEST_CASE("minimizer beats random directions") {
    const IntegrationConfig cfg = testutil::small_cfg();
    const StarBody body = StarBody::lq_ball(3, 4.0);
    const Density f = Density::exp_l1(0.8);
    const auto r = min_moment(body, f, 1.5, cfg);
    Rng rng(8);
    for (int k = 0; k < 100; ++k) {
      Vec xi(3);
      for (int i = 0; i < 3; ++i) xi(i) = rng.normal();
      xi /= xi.norm();
      CHECK(r.value.value <= moment(body, f, 1.5, xi, cfg).value * (1.0 + 1e-3));
    }
  }

  TEST_CASE("moments grow with the body") {
    const IntegrationConfig cfg = testutil::small_cfg();
    const Vec xi = vec({0.48, 0.6, 0.64});
    const double inner = moment(StarBody::euclidean_ball(3, 0.9), Density::gaussian(1.0), 2.0, xi, cfg).value;
    const double outer = moment(StarBody::cube(3, 0.9), Density::gaussian(1.0), 2.0, xi, cfg).value;
    CHECK(inner <= outer);
  }

  TEST_CASE("mass is invariant under unimodular maps") {
    const IntegrationConfig cfg = testutil::small_cfg();
    Mat t(2, 2);
    t << 2.0, 1.0, 0.5, 0.75;  // det 1
    const auto base = body_integrate(StarBody::cube(2, 1.0), Density::constant(1.0), cfg);
    const auto mapped = body_integrate(StarBody::cube(2, 1.0).linear_image(t), Density::constant(1.0), cfg);
    CHECK(rel(mapped.value, base.value) <= 5e-3);
  }

  TEST_CASE("least moment ratio against witness volumes") {
    const IntegrationConfig cfg = testutil::small_cfg();
    const StarBody cube = StarBody::cube(3, 1.0);
    const std::vector<Witness> ws = {*Witness::builtin(StarBody::euclidean_ball(3), 2.0, "ball")};
    const auto r = thm12_ratio(cube, Density::constant(1.0), 2.0, ws, cfg);
    CHECK(r.scaling == doctest::Approx(std::sqrt(3.0)).epsilon(1e-6));
    CHECK(r.v_hat == doctest::Approx(std::sqrt(3.0) * std::cbrt(4.0 * M_PI / 3.0)).epsilon(1e-6));
    CHECK(r.ratio <= 3.0);
    // Recorded pipeline value: sqrt(1/3) / (sqrt(2) sqrt(3) (4 pi / 3)^(1/3)).
    CHECK(r.ratio == doctest::Approx(std::sqrt(1.0 / 3.0) / (std::sqrt(2.0) * r.v_hat)).epsilon(1e-3));

    const StarBody lp = StarBody::lq_ball(3, 4.0);
    const std::vector<Witness> self = {*Witness::builtin(lp, 4.0, "self")};
    const auto s = thm12_ratio(lp, Density::constant(1.0), 4.0, self, cfg);
    CHECK(s.scaling == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(s.v_hat == doctest::Approx(std::cbrt(*lp.exact_volume())).epsilon(1e-6));
  }
}
