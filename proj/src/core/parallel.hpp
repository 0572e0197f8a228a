#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace vlcgsm {

inline unsigned effective_threads(int requested) {
    if (requested > 0) return static_cast<unsigned>(requested);
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

// Static block partition of [0, n). The callable receives (begin, end) and
// must not depend on which thread runs it; results must be merged by index
// so that thread count never changes the outcome.
template <typename Fn>
void parallel_blocks(std::size_t n, int threads, Fn&& fn) {
    const unsigned t = std::min<std::size_t>(effective_threads(threads), n == 0 ? 1 : n);
    if (t <= 1 || n <= 1) {
        fn(std::size_t{0}, n);
        return;
    }
    std::vector<std::thread> pool;
    std::exception_ptr err;
    std::mutex err_mx;
    const std::size_t chunk = (n + t - 1) / t;
    for (unsigned i = 0; i < t; ++i) {
        const std::size_t b = i * chunk;
        const std::size_t e = std::min(n, b + chunk);
        if (b >= e) break;
        pool.emplace_back([&, b, e] {
            try {
                fn(b, e);
            } catch (...) {
                std::lock_guard<std::mutex> lk(err_mx);
                if (!err) err = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

}  // namespace vlcgsm
