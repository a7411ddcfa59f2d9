#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace syndyn {

inline size_t resolve_threads(size_t requested) {
    if (requested > 0) {
        return requested;
    }
    return std::max<size_t>(1, std::thread::hardware_concurrency());
}

/// Calls f(i) for i in [0, n) across worker threads; rethrows the first exception.
template <typename F>
void parallel_for(size_t n, size_t threads, F &&f) {
    threads = std::min(resolve_threads(threads), std::max<size_t>(n, 1));
    if (threads <= 1) {
        for (size_t i = 0; i < n; i++) {
            f(i);
        }
        return;
    }
    std::atomic<size_t> next{0};
    std::exception_ptr err;
    std::mutex mu;
    auto worker = [&] {
        while (true) {
            size_t i = next.fetch_add(1);
            if (i >= n) {
                return;
            }
            try {
                f(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(mu);
                if (!err) {
                    err = std::current_exception();
                }
                next.store(n);
            }
        }
    };
    std::vector<std::thread> pool;
    for (size_t k = 0; k < threads; k++) {
        pool.emplace_back(worker);
    }
    for (auto &t : pool) {
        t.join();
    }
    if (err) {
        std::rethrow_exception(err);
    }
}

}  // namespace syndyn
