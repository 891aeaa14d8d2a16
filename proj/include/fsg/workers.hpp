#pragma once

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace fsg {

// Worker count from FSG_WORKERS, else the hardware concurrency.
inline unsigned worker_count() {
    if (const char* env = std::getenv("FSG_WORKERS")) {
        try {
            int n = std::stoi(env);
            if (n >= 1) return static_cast<unsigned>(n);
        } catch (const std::exception&) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

// Runs job(i) for i in [0, n) on up to `workers` threads. Jobs write to their
// own slots, so results come back in index order regardless of scheduling.
inline void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& job) {
    workers = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, workers), n));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) job(i);
        return;
    }
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t)
        pool.emplace_back([&, t] {
            try {
                for (std::size_t i = t; i < n; i += workers) job(i);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace fsg
