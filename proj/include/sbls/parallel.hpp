#pragma once

#include <cstddef>
#include <functional>

namespace sbls {

/// Worker count: SBLS_THREADS when set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
int worker_count();

/// Calls fn(i) for every i in [0, n) across worker_count() threads. fn must
/// only write to state owned by index i.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace sbls
