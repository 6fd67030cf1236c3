#pragma once

#include <cstddef>
#include <functional>

namespace curvlab {

/// Worker count: CURVLAB_THREADS when set to a positive integer, otherwise
/// the hardware concurrency (at least 1).
std::size_t thread_count();

/// Runs body(i) for i in [0, count) across up to thread_count() threads.
/// Each index must write only its own output slot; the first exception
/// thrown by any task is rethrown on the calling thread.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace curvlab
