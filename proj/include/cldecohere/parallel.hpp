#pragma once

#include <cstddef>
#include <functional>

namespace cldecohere {

/// Worker count from an explicit request, else CL_DECOHERE_JOBS, else 1.
std::size_t resolve_jobs(std::size_t requested);

/// Calls fn(i) for i in [0, n) on up to `jobs` threads. Each index runs
/// exactly once; callers write results by index so output order never depends
/// on scheduling. The first exception thrown by any task is rethrown.
void parallel_for(std::size_t n, std::size_t jobs, const std::function<void(std::size_t)>& fn);

}  // namespace cldecohere
