#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace isoridge
{

/// Worker count to use when the caller passes 0.
inline unsigned default_workers()
{
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Calls body(index, worker) for every index in [0, count), spreading chunks of
/// `grain` indices over `workers` threads. Bodies must write disjoint state.
/// The first exception thrown by any body is rethrown on the calling thread.
template <typename Body>
void parallel_for(std::size_t count, unsigned workers, std::size_t grain, Body&& body)
{
    if (workers == 0)
        workers = default_workers();
    grain = std::max<std::size_t>(grain, 1);
    const std::size_t chunks = (count + grain - 1) / grain;
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(chunks, 1)));

    if (workers <= 1)
    {
        for (std::size_t k = 0; k < count; ++k)
            body(k, 0u);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto run = [&](unsigned worker) {
        try
        {
            for (;;)
            {
                const std::size_t chunk = next.fetch_add(1, std::memory_order_relaxed);
                if (chunk >= chunks)
                    break;
                const std::size_t end = std::min(count, (chunk + 1) * grain);
                for (std::size_t k = chunk * grain; k < end; ++k)
                    body(k, worker);
            }
        }
        catch (...)
        {
            std::lock_guard lock(failure_mutex);
            if (!failure)
                failure = std::current_exception();
            next.store(chunks);
        }
    };

    std::vector<std::jthread> pool;
    pool.reserve(workers - 1);
    for (unsigned w = 1; w < workers; ++w)
        pool.emplace_back(run, w);
    run(0);
    pool.clear();

    if (failure)
        std::rethrow_exception(failure);
}

} // namespace isoridge
