#include "critline/parallel.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace critline {

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

void parallel_chunks(std::int64_t n, std::int64_t chunk_size, int threads,
                     const std::function<void(std::int64_t, std::int64_t, std::int64_t)>& fn) {
    if (n <= 0) return;
    if (chunk_size <= 0) chunk_size = 1;
    const std::int64_t n_chunks = (n + chunk_size - 1) / chunk_size;
    const int workers = std::min<std::int64_t>(resolve_threads(threads), n_chunks);

    if (workers <= 1) {
        for (std::int64_t c = 0; c < n_chunks; ++c)
            fn(c, c * chunk_size, std::min(n, (c + 1) * chunk_size));
        return;
    }

    std::atomic<std::int64_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto work = [&]() {
        for (;;) {
            const std::int64_t c = next.fetch_add(1);
            if (c >= n_chunks) return;
            try {
                fn(c, c * chunk_size, std::min(n, (c + 1) * chunk_size));
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers) - 1);
    for (int i = 1; i < workers; ++i) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

} // namespace critline
