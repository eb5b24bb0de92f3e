#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <memory>

namespace slicelab {

/// First `count` points of a scrambled Sobol sequence in (0,1)^dims, one point
/// per column. The unscrambled origin is included, so every power-of-two prefix
/// is a (t,m,s)-net. Scrambling is a random lower-triangular binary matrix plus
/// a digital shift per coordinate, drawn from `seed`.
Eigen::MatrixXd scrambled_sobol(int dims, int count, std::uint64_t seed);

/// Cached variant for repeated use of the same point set.
std::shared_ptr<const Eigen::MatrixXd> scrambled_sobol_cached(int dims, int count, std::uint64_t seed);

/// Standard normal quantile.
double inverse_normal_cdf(double u);

}  // namespace slicelab
