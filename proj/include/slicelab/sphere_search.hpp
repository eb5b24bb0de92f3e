#pragma once

#include "slicelab/types.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace slicelab {

struct SphereSearchOptions {
  /// Start from the 2n signed coordinate axes.
  bool axis_starts = true;
  int random_starts = 8;
  std::vector<Vec> extra_starts;
  /// Run the local simplex search from the best k starts only; -1 = all.
  int local_searches = -1;
  int max_evals = 200;
  double initial_step = 0.3;
  double step_tol = 1e-5;
  std::uint64_t seed = 0;
};

struct SphereSearchResult {
  Vec direction;
  double value = 0.0;
  int evaluations = 0;
  /// Final value of each local search, in start order.
  std::vector<double> start_values;
  /// max - min over start_values, relative to |value| when nonzero.
  double relative_spread = 0.0;
};

/// Multi-start Nelder-Mead on tangent charts of S^{n-1} with reprojection.
/// The reported value is the best found, so it upper-bounds the true minimum.
/// Ties within 1e-12 relative resolve to the lexicographically smallest direction.
SphereSearchResult minimize_on_sphere(const std::function<double(const Vec&)>& objective, int n,
                                      const SphereSearchOptions& options);

SphereSearchResult maximize_on_sphere(const std::function<double(const Vec&)>& objective, int n,
                                      const SphereSearchOptions& options);

/// Orthonormal basis (n x (n-1)) of the hyperplane orthogonal to the unit vector xi.
Mat orthogonal_complement(const Vec& xi);

bool lexicographically_less(const Vec& a, const Vec& b);

}  // namespace slicelab
