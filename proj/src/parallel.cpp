// SPDX-License-Identifier: Apache-2.0
#include "splitrx/parallel.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <vector>

namespace splitrx {

namespace {
std::atomic<int> g_num_threads{0};
}

void set_num_threads(int n) {
    if (n < 0) throw std::invalid_argument("set_num_threads: n must be >= 0");
    g_num_threads.store(n);
}

int num_threads() {
    const int n = g_num_threads.load();
    if (n > 0) return n;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

void for_each_chunk(std::int64_t n_items, std::int64_t chunk_size,
                    const std::function<void(std::int64_t, std::int64_t, std::int64_t)>& fn) {
    if (n_items <= 0) return;
    if (chunk_size <= 0) throw std::invalid_argument("for_each_chunk: chunk_size must be > 0");
    const std::int64_t n_chunks = chunk_count(n_items, chunk_size);

    auto run_chunk = [&](std::int64_t c) {
        const std::int64_t begin = c * chunk_size;
        const std::int64_t count = std::min(chunk_size, n_items - begin);
        fn(c, begin, count);
    };

    const int workers = std::min<std::int64_t>(num_threads(), n_chunks);
    if (workers <= 1) {
        for (std::int64_t c = 0; c < n_chunks; ++c) run_chunk(c);
        return;
    }

    std::atomic<std::int64_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::int64_t c = next.fetch_add(1);
                if (c >= n_chunks) return;
                try {
                    run_chunk(c);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace splitrx
