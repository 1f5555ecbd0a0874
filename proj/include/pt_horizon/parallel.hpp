#pragma once

#include <cstddef>
#include <functional>

namespace pt_horizon {

// Worker count: PT_HORIZON_THREADS when set to a positive integer, otherwise
// std::thread::hardware_concurrency().
std::size_t worker_count();

// Calls body(begin, end) on disjoint contiguous chunks covering [0, n).
// Chunk boundaries depend only on n and the worker count; bodies must write
// only to their own slots so results match a sequential run.
void parallel_for(std::size_t n,
                  const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace pt_horizon
