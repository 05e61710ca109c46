#pragma once

#include <cstddef>
#include <functional>

namespace mmtc {

// Worker cap: MMTC_THREADS if set (clamped to >= 1), else hardware concurrency.
int thread_cap();

// Runs body(i) for i in [0, count). Each index must write only its own slot;
// results are then independent of the thread count. Exceptions from workers
// are rethrown on the calling thread (first one wins).
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

} // namespace mmtc
