#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace fclat {

inline unsigned resolve_threads(unsigned requested) {
    if (requested != 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

/// Runs fn(worker, begin, end) on contiguous chunks of [0, n).
/// Results must be merged by the caller in worker index order so the
/// outcome is independent of scheduling.
template <class F>
void parallel_chunks(std::size_t n, unsigned threads, F&& fn) {
    threads = resolve_threads(threads);
    if (n == 0) return;
    if (threads <= 1 || n < 2 * threads) {
        fn(0u, std::size_t{0}, n);
        return;
    }
    std::size_t chunk = (n + threads - 1) / threads;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        std::size_t b = std::min(n, t * chunk);
        std::size_t e = std::min(n, b + chunk);
        if (b >= e) break;
        pool.emplace_back([&fn, t, b, e] { fn(t, b, e); });
    }
    for (auto& th : pool) th.join();
}

}  // namespace fclat
