#include "monostat/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

namespace monostat {

namespace {
std::atomic<int> g_workers{0};  // 0 = auto
thread_local bool t_inside_parallel = false;
}  // namespace

void set_worker_threads(int n) { g_workers.store(n, std::memory_order_relaxed); }

int worker_threads() {
    const int configured = g_workers.load(std::memory_order_relaxed);
    if (configured > 0) return configured;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn) {
    if (n == 0) return;
    const int threads = t_inside_parallel ? 1 : std::min<std::size_t>(worker_threads(), n);
    if (threads <= 1) {
        fn(0, n);
        return;
    }
    const std::size_t chunk = (n + threads - 1) / threads;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) {
        const std::size_t begin = t * chunk;
        const std::size_t end = std::min(n, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([&fn, begin, end] {
            t_inside_parallel = true;
            fn(begin, end);
            t_inside_parallel = false;
        });
    }
    for (std::thread& th : pool) th.join();
}

}  // namespace monostat
