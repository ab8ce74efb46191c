#pragma once

#include <cstddef>
#include <functional>

namespace kdi {

// Worker cap from the KDI_THREADS environment variable; 0 or unset means
// hardware concurrency.
int worker_count();

// Static partition of [0, count) over workers. fn(i) must only write state
// owned by index i, so the result is independent of the worker count.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace kdi
