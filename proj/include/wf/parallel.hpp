#pragma once

// Deterministic parallel sweep helper.  Work is split into fixed chunks by
// index range, each chunk computed independently, and the partial results
// reduced in ascending chunk order, so the outcome is identical for any
// worker count.  Worker count comes from the FEJER_THREADS environment
// variable (default 1).

#include <cstdint>
#include <future>
#include <thread>
#include <vector>

namespace wf {

inline unsigned worker_count() {
    if (const char* env = std::getenv("FEJER_THREADS")) {
        const long v = std::atol(env);
        const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
        if (v >= 1 && static_cast<unsigned long>(v) <= 4ul * hw) return static_cast<unsigned>(v);
    }
    return 1;
}

// fn(chunk_lo, chunk_hi) -> T over inclusive subranges of [lo, hi];
// merge(acc, next) folds partials left-to-right.
template <class T, class Fn, class Merge>
T parallel_reduce_range(std::uint64_t lo, std::uint64_t hi, Fn fn, Merge merge) {
    const unsigned workers = worker_count();
    const std::uint64_t count = hi - lo + 1;
    if (workers <= 1 || count < 2 * workers) return fn(lo, hi);
    const std::uint64_t per = count / workers;
    std::vector<std::future<T>> parts;
    for (unsigned w = 0; w < workers; ++w) {
        const std::uint64_t a = lo + w * per;
        const std::uint64_t b = (w + 1 == workers) ? hi : a + per - 1;
        parts.push_back(std::async(std::launch::async, fn, a, b));
    }
    T acc = parts[0].get();
    for (unsigned w = 1; w < workers; ++w) acc = merge(std::move(acc), parts[w].get());
    return acc;
}

}  // namespace wf
