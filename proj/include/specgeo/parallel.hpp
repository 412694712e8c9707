// Deterministic parallel reduction: the index range is cut into a fixed
// number of chunks independent of the thread count, each chunk reduces
// locally, and the partials combine in chunk order -- so results are
// bitwise identical whether SPECGEO_THREADS caps us at 1 or not.
#pragma once

#include <cstdlib>
#include <thread>
#include <vector>

namespace specgeo::par {

inline int thread_budget() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("SPECGEO_THREADS")) {
        long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1 && static_cast<unsigned>(cap) < hw) hw = static_cast<unsigned>(cap);
    }
    return static_cast<int>(hw);
}

// Acc must be default-constructible; body(i, acc) accumulates into acc;
// combine(total, acc) folds one chunk into the running total.
template <typename Acc, typename Body, typename Combine>
Acc parallel_reduce(long n, Body&& body, Combine&& combine, int chunks = 64) {
    if (chunks > n) chunks = static_cast<int>(n > 0 ? n : 1);
    std::vector<Acc> partial(chunks);
    const int threads = std::min(thread_budget(), chunks);

    auto run_chunk = [&](int c) {
        long lo = n * c / chunks, hi = n * (c + 1) / chunks;
        Acc acc{};
        for (long i = lo; i < hi; ++i) body(i, acc);
        partial[c] = acc;
    };

    if (threads <= 1) {
        for (int c = 0; c < chunks; ++c) run_chunk(c);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t)
            pool.emplace_back([&, t] {
                for (int c = t; c < chunks; c += threads) run_chunk(c);
            });
        for (auto& th : pool) th.join();
    }
    Acc total{};
    for (int c = 0; c < chunks; ++c) combine(total, partial[c]);
    return total;
}

} // namespace specgeo::par
