#pragma once

#include <cstddef>
#include <functional>

namespace dexws {

/// Worker count: $DEXWS_THREADS when set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
std::size_t default_thread_count();

/// Runs task(i) for every i in [0, count) on up to `threads` workers.
/// Tasks are claimed dynamically; callers must write results into disjoint
/// slots indexed by i. The first exception thrown by any task is rethrown
/// after all workers join.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& task,
                  std::size_t threads = default_thread_count());

}  // namespace dexws
