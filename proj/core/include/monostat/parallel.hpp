#pragma once

#include <cstddef>
#include <functional>

namespace monostat {

/// Number of worker threads used by parallel_for (defaults to the hardware
/// concurrency). Setting it to 1 forces serial execution everywhere.
void set_worker_threads(int n);
int worker_threads();

/// Runs fn(begin, end) over disjoint chunks of [0, n). Chunking is
/// deterministic and results must be written to disjoint slots, so output is
/// identical regardless of thread count. Nested calls run serially in the
/// calling thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace monostat
