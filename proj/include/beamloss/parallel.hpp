// SPDX-License-Identifier: Apache-2.0
//
// beamloss: SNR loss analysis for beamforming with per-antenna array impairments

#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace beamloss::detail {

// Runs fn(i) for every i in [0, n_items) on up to n_threads workers.
// Execution order is unspecified; work items must write only to their own
// output slots so results never depend on scheduling.
inline void parallel_for(std::size_t n_items, unsigned n_threads,
                         const std::function<void(std::size_t)>& fn) {
    if (n_items == 0) return;
    const std::size_t workers =
        std::min<std::size_t>(n_threads == 0 ? 1 : n_threads, n_items);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n_items; ++i) fn(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= n_items) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace beamloss::detail
