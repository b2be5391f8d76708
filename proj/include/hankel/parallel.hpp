#pragma once

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace hankel {

/// Worker cap shared by all parallel loops. 0 = hardware concurrency.
/// Settable from the CLI (--workers) or the HANKEL_LAB_WORKERS env var.
int& worker_cap();

int effective_workers(std::size_t items);

/// Static-partition parallel map: fn(i) for i in [0, n). Every item is
/// computed independently from its inputs and written to a slot owned by
/// that item, so results are bitwise identical for any worker count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

} // namespace hankel
