#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace bellcomm {

/// Applies fn to every index in [0, count) on a small thread pool and
/// collects results in index order, so output is deterministic regardless
/// of schedule. fn must be safe to call concurrently.
template <typename T>
std::vector<T> parallel_map(std::size_t count, const std::function<T(std::size_t)>& fn,
                            unsigned threads = 0) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    std::vector<T> results(count);
    if (count == 0) return results;
    if (threads == 1 || count == 1) {
        for (std::size_t i = 0; i < count; ++i) results[i] = fn(i);
        return results;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= count) break;
            try {
                results[i] = fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < std::min<std::size_t>(threads, count); ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
    return results;
}

}  // namespace bellcomm
