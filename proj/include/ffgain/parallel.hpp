#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace ffgain::parallel {

// Worker count: hardware concurrency capped by the FFGAIN_THREADS
// environment variable (0 or unset = no cap; 1 = serial).
inline std::size_t thread_count() {
    std::size_t n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    if (const char* env = std::getenv("FFGAIN_THREADS")) {
        char* end = nullptr;
        const unsigned long cap = std::strtoul(env, &end, 10);
        if (end != env && cap > 0) n = std::min<std::size_t>(n, cap);
    }
    return n;
}

// Runs fn(i) for i in [0, n). Results must be written to disjoint,
// preallocated slots so the outcome is independent of the thread count and
// of scheduling. The first exception thrown by any worker is rethrown.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
    const std::size_t workers = std::min(thread_count(), n == 0 ? 1 : n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            // Fixed block decomposition: worker w owns a contiguous range.
            const std::size_t lo = n * w / workers;
            const std::size_t hi = n * (w + 1) / workers;
            try {
                for (std::size_t i = lo; i < hi; ++i) fn(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

}  // namespace ffgain::parallel
