#pragma once

#include <cstddef>
#include <functional>

namespace reskit {

/// Worker count: explicit request if nonzero, else RESILIENCE_KIT_THREADS if
/// set, else hardware concurrency. Never less than 1.
std::size_t thread_count(std::size_t requested = 0);

/// Call body(i) for i in [0, count) on up to `threads` workers. Indices are
/// handed out in contiguous blocks; body must only write to slot i of any
/// shared output. The first exception thrown is rethrown after all workers
/// stop.
void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& body);

} // namespace reskit
