#pragma once

#include <cstddef>
#include <functional>

namespace forcycle {

/// Run fn(i) for i in [0, n) across a small thread pool. Work items must
/// be independent and write only to disjoint, preallocated slots, which
/// keeps results bit-identical to the serial order. The first exception
/// thrown by any item is rethrown after all threads join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn,
                  unsigned max_threads = 0);

} // namespace forcycle
