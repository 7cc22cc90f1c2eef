#pragma once

#include <cstddef>
#include <functional>

namespace weightlab {

/// Worker count: WEIGHTLAB_THREADS when set to a positive integer, else the
/// hardware concurrency.
unsigned worker_count();

/// Runs body(begin, end) over contiguous chunks of [0, n). Each index is
/// visited exactly once, so writes to disjoint outputs stay deterministic.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace weightlab
