#pragma once

#include <cstddef>
#include <functional>

namespace leosg {

// Number of worker threads used by the Monte Carlo estimators. 0 selects the
// hardware concurrency. Results never depend on this value.
void set_worker_count(std::size_t workers);
std::size_t worker_count();

// Calls body(i) for every i in [0, n) across the worker pool. The first exception
// thrown by any call is rethrown on the calling thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

// Sum with pairwise (cascade) reduction; the order of additions depends only on the size.
double pairwise_sum(const double* values, std::size_t n);

}  // namespace leosg
