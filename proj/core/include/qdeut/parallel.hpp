#pragma once

#include <cstddef>
#include <functional>

namespace qdeut {

// Machine parallelism, at least 1.
int default_workers();

// Runs body(i) for i in [0, count) across `workers` threads (0 = default).
// Indices are split into contiguous chunks; bodies must only write state
// owned by their own index so results are identical for any worker count.
// The first exception thrown by any body is rethrown on the calling thread.
void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& body);

}  // namespace qdeut
