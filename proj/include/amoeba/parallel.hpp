#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace amoeba {

/// Runs body(i) for i in [0, n) on `workers` threads and returns the results
/// indexed by i, so the output never depends on scheduling. The first
/// exception thrown by any body is rethrown after all threads join.
template <class Result, class Body>
std::vector<Result> run_indexed(int n, int workers, Body body) {
    std::vector<Result> out(static_cast<std::size_t>(std::max(n, 0)));
    workers = std::clamp(workers, 1, std::max(n, 1));
    if (workers == 1) {
        for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = body(i);
        return out;
    }
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto loop = [&] {
        for (int i = next++; i < n; i = next++) {
            try {
                out[static_cast<std::size_t>(i)] = body(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                next = n;
            }
        }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(loop);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
    return out;
}

}  // namespace amoeba
