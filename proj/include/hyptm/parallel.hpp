#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace hyptm {

/// Worker count: HYPTM_THREADS if set and positive, else the hardware count.
std::size_t thread_count();

/// Runs body(i) for i in [0, n), split into contiguous blocks over
/// thread_count() workers. Bodies must write to disjoint locations.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

/// Pairwise (tree) sum in index order; independent of the thread count.
double ordered_sum(std::span<const double> terms);

}  // namespace hyptm
