#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace weft::detail {

/// Worker count: hardware concurrency, capped by WIGNER_WEFT_THREADS.
inline unsigned worker_count() {
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char *cap = std::getenv("WIGNER_WEFT_THREADS")) {
        try {
            const long v = std::stol(cap);
            if (v >= 1)
                n = std::min<unsigned>(n, static_cast<unsigned>(v));
        } catch (...) {
        }
    }
    return n;
}

/// Runs body(i) for i in [0, count) on contiguous blocks. Each index is
/// handled by exactly one thread, so results written per index do not
/// depend on the thread count.
template <typename Body>
void parallel_for(std::size_t count, Body &&body) {
    const std::size_t workers = std::min<std::size_t>(worker_count(), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            body(i);
        return;
    }
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (count + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t lo = w * chunk;
        const std::size_t hi = std::min(count, lo + chunk);
        if (lo >= hi)
            break;
        pool.emplace_back([lo, hi, &body] {
            for (std::size_t i = lo; i < hi; ++i)
                body(i);
        });
    }
}

} // namespace weft::detail
