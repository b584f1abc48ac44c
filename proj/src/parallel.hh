#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace zom::innards
{
    /// Runs f(i) for every i in [0, count) on up to `threads` workers,
    /// handing out indices in increasing order. The first exception thrown
    /// by any worker is rethrown after all workers stop.
    template <typename F>
    auto parallel_for(std::size_t count, unsigned threads, F && f) -> void
    {
        if (threads <= 1 || count <= 1) {
            for (std::size_t i = 0 ; i < count ; ++i)
                f(i);
            return;
        }

        std::atomic<std::size_t> next{0};
        std::atomic<bool> failed{false};
        std::exception_ptr error;
        std::mutex error_mutex;

        auto work = [&] {
            while (! failed.load()) {
                auto i = next.fetch_add(1);
                if (i >= count)
                    return;
                try {
                    f(i);
                }
                catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (! error)
                        error = std::current_exception();
                    failed = true;
                }
            }
        };

        std::vector<std::jthread> workers;
        for (unsigned t = 0 ; t < threads && t < count ; ++t)
            workers.emplace_back(work);
        workers.clear();

        if (error)
            std::rethrow_exception(error);
    }
}
