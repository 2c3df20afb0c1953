#pragma once

#include <cstdint>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace diffuni {

// Splits [0, items) into one contiguous slice per worker and runs fn(worker,
// lo, hi) on each. Slices are a pure function of (items, threads), so any
// per-worker state a caller merges deterministically is independent of
// scheduling. threads < 1 is treated as 1.
inline void parallel_slices(std::uint64_t items, int threads,
                            const std::function<void(int, std::uint64_t, std::uint64_t)>& fn) {
    if (threads < 1) threads = 1;
    if (items == 0) return;
    auto t = static_cast<std::uint64_t>(threads);
    if (t > items) t = items;
    if (t == 1) {
        fn(0, 0, items);
        return;
    }
    std::uint64_t base = items / t, extra = items % t;
    std::vector<std::thread> pool;
    pool.reserve(t);
    std::uint64_t lo = 0;
    for (std::uint64_t w = 0; w < t; ++w) {
        std::uint64_t hi = lo + base + (w < extra ? 1 : 0);
        pool.emplace_back(fn, static_cast<int>(w), lo, hi);
        lo = hi;
    }
    for (auto& th : pool) th.join();
}

// Thread count resolution used by the CLI: explicit argument wins, then the
// DIFFUNI_THREADS environment variable, then 1.
inline int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("DIFFUNI_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 1;
}

} // namespace diffuni
