#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace ess {

/// Worker count: ESS_THREADS if set and positive, else the hardware concurrency.
inline unsigned thread_count()
{
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("ESS_THREADS")) {
        try {
            int n = std::stoi(env);
            if (n > 0)
                return static_cast<unsigned>(n);
        }
        catch (const std::exception&) {
        }
    }
    return hw;
}

/// Calls f(i) for i in [0, n). Each index is handled exactly once; the first exception is rethrown.
template <class F>
void parallel_for(std::size_t n, F&& f)
{
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(thread_count(), n));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto run = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= n)
                return;
            try {
                f(i);
            }
            catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error)
                    error = std::current_exception();
                next = n;
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t)
        pool.emplace_back(run);
    for (auto& t : pool)
        t.join();
    if (error)
        std::rethrow_exception(error);
}

}  // namespace ess
