#pragma once

#include <cstddef>
#include <functional>

namespace pathtsp {

/// Worker count: PATHTSP_THREADS when set (≥ 1), else the hardware concurrency.
unsigned worker_count();

/// Runs body(i) for i in [0, count). Bodies must write only to their own slot;
/// the first exception thrown is rethrown after all workers stop.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace pathtsp
