#pragma once

#include <cstddef>
#include <functional>

namespace pgrad {

// Worker count: min(hardware_concurrency, PGRAD_THREADS if set).  Always >= 1.
std::size_t worker_count();

// Runs fn(i) for i in [begin, end) split into contiguous chunks, one chunk per
// worker.  Falls back to a plain loop when the range is small or only one
// worker is available.  fn must not throw across chunks it does not own;
// exceptions are rethrown on the calling thread after all workers join.
void parallel_for(std::size_t begin, std::size_t end,
                  const std::function<void(std::size_t)>& fn);

}  // namespace pgrad
