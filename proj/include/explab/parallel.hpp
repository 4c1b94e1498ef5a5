// parallel.hpp — deterministic index-parallel loop. Work is split into fixed
// chunks independent of the thread count, so results are byte-identical for
// any EXPLAB_THREADS setting.

#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace explab {

inline int max_threads() {
    unsigned hw = std::thread::hardware_concurrency();
    int cap = hw == 0 ? 1 : static_cast<int>(hw);
    if (const char* env = std::getenv("EXPLAB_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1) cap = std::min(cap, v);
    }
    return cap;
}

/// Run body(i) for i in [0, count). Each index writes only its own output
/// slot; scheduling order carries no floating-point consequences.
template <class Body>
void parallel_for(std::size_t count, Body&& body) {
    int threads = std::min<std::size_t>(max_threads(), count == 0 ? 1 : count);
    if (threads <= 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            body(i);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(threads - 1);
    for (int t = 0; t + 1 < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
}

} // namespace explab
