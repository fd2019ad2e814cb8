#pragma once

#include <cstddef>
#include <functional>

namespace latchaos {

/// Worker count: LATCHAOS_THREADS when set to a positive integer, capped by
/// the hardware concurrency; otherwise all cores.
unsigned worker_count();

/// Runs body(i) for i in [0, count) over worker_count() threads. Each index
/// is executed exactly once; the first exception thrown is rethrown after
/// all workers have stopped.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

} // namespace latchaos
