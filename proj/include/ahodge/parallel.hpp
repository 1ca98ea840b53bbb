#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ahodge {

/**
 * Runs fn(i) for i in [0, count) on up to `jobs` threads. Work items are
 * claimed from a shared counter; callers write results into per-index slots
 * so the outcome does not depend on scheduling. The first exception thrown
 * by any item is rethrown after all threads have joined.
 */
template <typename Fn>
void parallel_for(std::size_t count, unsigned jobs, Fn&& fn)
{
    if (jobs <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                next.store(count);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    const unsigned nthreads = std::min<std::size_t>(jobs, count);
    for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace ahodge
