#pragma once

#include <cstdint>
#include <vector>

#include <omp.h>

namespace eigensum::par {

// Worker count convention: 0 = OpenMP default, 1 = serial, n = n threads.
// Every parallel kernel in this project writes to preallocated per-index
// slots or reduces fixed-size blocks in block order, so results are
// bit-identical for any worker count.

inline int resolve_workers(int workers) {
    if (workers <= 0) return omp_get_max_threads();
    return workers;
}

/// Parallel loop over [0, n) with independent per-index work.
template <typename Fn>
void parallel_for(std::int64_t n, int workers, Fn&& fn) {
    const int nw = resolve_workers(workers);
#pragma omp parallel for schedule(dynamic, 1) num_threads(nw)
    for (std::int64_t i = 0; i < n; ++i) fn(i);
}

/// Serial reference for parallel_for; kept for correctness tests and the
/// benchmark target.
template <typename Fn>
void serial_for(std::int64_t n, Fn&& fn) {
    for (std::int64_t i = 0; i < n; ++i) fn(i);
}

/// Fixed-block map-reduce: [0, n) is cut into blocks of `block` items.
/// Each block is accumulated serially in index order into its own partial,
/// partials are then summed in block order. The block layout does not
/// depend on the worker count, so the floating-point result is identical
/// for serial and any parallel execution.
template <typename Fn>
double block_sum(std::int64_t n, std::int64_t block, int workers, Fn&& term) {
    const std::int64_t nblocks = (n + block - 1) / block;
    std::vector<double> partial(static_cast<std::size_t>(nblocks), 0.0);
    const int nw = resolve_workers(workers);
#pragma omp parallel for schedule(dynamic, 1) num_threads(nw)
    for (std::int64_t b = 0; b < nblocks; ++b) {
        double acc = 0.0;
        const std::int64_t lo = b * block;
        const std::int64_t hi = lo + block < n ? lo + block : n;
        for (std::int64_t i = lo; i < hi; ++i) acc += term(i);
        partial[static_cast<std::size_t>(b)] = acc;
    }
    double total = 0.0;
    for (double p : partial) total += p;
    return total;
}

template <typename Fn>
double block_sum_serial(std::int64_t n, std::int64_t block, Fn&& term) {
    const std::int64_t nblocks = (n + block - 1) / block;
    double total = 0.0;
    for (std::int64_t b = 0; b < nblocks; ++b) {
        double acc = 0.0;
        const std::int64_t lo = b * block;
        const std::int64_t hi = lo + block < n ? lo + block : n;
        for (std::int64_t i = lo; i < hi; ++i) acc += term(i);
        total += acc;
    }
    return total;
}

}  // namespace eigensum::par
