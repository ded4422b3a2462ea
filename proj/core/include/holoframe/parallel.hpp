#pragma once

#include <cstddef>
#include <functional>

namespace holoframe {

/// Worker count for node-parallel maps (default 1). Reductions in this
/// library never depend on it.
void set_thread_count(int threads);
int thread_count();

/// Calls body(begin, end) on disjoint contiguous chunks covering [0, n).
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace holoframe
