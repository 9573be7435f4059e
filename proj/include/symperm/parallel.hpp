#pragma once

#include <cstddef>
#include <functional>

namespace symperm {

/// Worker count from SYMPERM_THREADS (unset or 0 = hardware concurrency).
int worker_count();

/**
 * Runs body(i) for i in [0, count) on up to worker_count() threads with a
 * static interleaved schedule. Bodies must write only to their own slot.
 * The first exception thrown by any body is rethrown after all threads join.
 */
void parallel_for(std::size_t count, const std::function<void(std::size_t)> &body);

} // namespace symperm
