#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ksrg {

/// Number of hardware threads, at least 1.
inline int available_threads() {
    return static_cast<int>(std::max(1U, std::thread::hardware_concurrency()));
}

/// Effective worker count parallel_for will use.
inline std::size_t worker_count(std::size_t count, int threads) {
    return std::clamp<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), 1, std::max<std::size_t>(count, 1));
}

/// Calls body(index, worker) for every index in [0, count) on up to
/// `threads` workers. Indices are handed out dynamically, so `body` must
/// write its result into an index-addressed slot. The first exception thrown
/// by any call is rethrown after all workers stop.
template <typename Body>
void parallel_for(std::size_t count, int threads, Body&& body) {
    const std::size_t workers = worker_count(count, threads);
    if (workers == 1) {
        for (std::size_t i = 0; i < count; ++i) body(i, std::size_t{0});
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto run = [&](std::size_t worker) {
        for (;;) {
            const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= count || failed.load(std::memory_order_relaxed)) return;
            try {
                body(i, worker);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                failed = true;
                return;
            }
        }
    };
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers - 1);
        for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(run, w);
        run(0);
    }
    if (error) std::rethrow_exception(error);
}

}  // namespace ksrg
