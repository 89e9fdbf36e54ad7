#pragma once

// Deterministic data-parallel helper: static contiguous block partition over
// a row range. The partition depends only on (count, threads), and workers
// write disjoint output slices, so results are identical for any thread
// count as long as the per-row work is pure.

#include <algorithm>
#include <thread>
#include <vector>

namespace ope {

inline int resolve_threads(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? int(hw) : 1;
}

template <class Fn>
void parallel_for_rows(int count, int threads, Fn&& fn) {
    threads = std::clamp(resolve_threads(threads), 1, std::max(count, 1));
    if (threads == 1 || count <= 1) {
        fn(0, count);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    const int base = count / threads, extra = count % threads;
    int begin = 0;
    for (int t = 0; t < threads; ++t) {
        const int end = begin + base + (t < extra ? 1 : 0);
        pool.emplace_back([&fn, begin, end] { fn(begin, end); });
        begin = end;
    }
    for (auto& th : pool) th.join();
}

}  // namespace ope
