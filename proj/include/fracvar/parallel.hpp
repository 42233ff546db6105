#pragma once

#include <cstddef>
#include <functional>

namespace fracvar {

/// Worker count: FRACVAR_THREADS when set to a positive integer, otherwise
/// the hardware concurrency (at least 1).
int worker_count();

/// Runs body(i) for i in [0, count) on up to worker_count() threads. Each
/// index is processed exactly once; callers write results into per-index
/// slots so the outcome does not depend on scheduling. The first exception
/// thrown by a body is rethrown after all workers finish.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace fracvar
