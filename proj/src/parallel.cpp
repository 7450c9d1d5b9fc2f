#include "nls/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

namespace nls {

namespace {
std::atomic<unsigned> g_threads{1};
}

void set_thread_count(unsigned count) {
    if (count == 0) count = std::max(1u, std::thread::hardware_concurrency());
    g_threads.store(count);
}

unsigned thread_count() { return g_threads.load(); }

void parallel_rows(std::size_t rows, const std::function<void(std::size_t, std::size_t)>& body) {
    const std::size_t workers = std::min<std::size_t>(thread_count(), rows);
    if (workers <= 1) {
        body(0, rows);
        return;
    }
    const std::size_t block = (rows + workers - 1) / workers;
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t begin = 0; begin < rows; begin += block) {
        const std::size_t end = std::min(rows, begin + block);
        pool.emplace_back([&body, begin, end] { body(begin, end); });
    }
}

}  // namespace nls
