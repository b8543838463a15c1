#pragma once

#include <cstddef>
#include <functional>

namespace qsvm {

/// Resolve a user-facing thread count: 0 means hardware concurrency.
std::size_t resolve_threads(std::size_t requested);

/// Run body(i) for i in [0, count) on up to `threads` workers.
///
/// Each index is visited exactly once; callers write results into preallocated
/// slots so the outcome does not depend on scheduling. The first exception thrown
/// by any worker is rethrown on the calling thread.
void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& body);

}  // namespace qsvm
