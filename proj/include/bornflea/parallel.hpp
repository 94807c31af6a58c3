#pragma once

#include <cstddef>
#include <functional>

namespace bornflea {

// Runs fn(0..n-1) on up to `threads` workers (dynamic scheduling).  Each call
// must write only to its own output slot; result assembly stays in index
// order, so output is identical for any thread count.  The first exception
// thrown by a worker is rethrown after all workers join.
void parallel_for(std::size_t n, unsigned threads,
                  const std::function<void(std::size_t)>& fn);

}  // namespace bornflea
