#pragma once

#include "slicelab/quad.hpp"
#include "slicelab/types.hpp"

#include <cmath>
#include <initializer_list>

namespace testutil {

inline slicelab::Vec vec(std::initializer_list<double> xs) {
  slicelab::Vec v(static_cast<int>(xs.size()));
  int i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

inline double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

/// Moderate budgets so the unit tests stay fast on one core.
inline slicelab::IntegrationConfig small_cfg(std::uint64_t seed = 42) {
  slicelab::IntegrationConfig cfg;
  cfg.seed = seed;
  cfg.sphere_samples = 16384;
  cfg.radial_nodes = 16;
  cfg.section_samples = 1024;
  cfg.section_grid = 33;
  cfg.golden_iterations = 16;
  cfg.random_starts = 4;
  cfg.search_evals = 120;
  cfg.local_searches = 3;
  cfg.containment_samples = 4096;
  cfg.hypothesis_directions = 128;
  return cfg;
}

}  // namespace testutil
