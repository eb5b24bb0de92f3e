#pragma once

#include <cstddef>
#include <functional>

namespace slicelab {

/// Worker count: hardware concurrency, capped by SLICELAB_THREADS when set.
int worker_count();

/// Runs fn(i) for i in [0, count). Work is split into fixed contiguous chunks,
/// so results written by index never depend on scheduling. The first exception
/// (lowest index) is rethrown after all workers join.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace slicelab
