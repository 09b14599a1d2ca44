#include "hypcone/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

namespace hypcone {

namespace {
int g_workers = 0;
constexpr std::size_t kChunkSize = 8192;
} // namespace

void set_worker_threads(int n) { g_workers = n < 0 ? 0 : n; }

int worker_threads() {
    if (g_workers > 0) return g_workers;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

std::size_t chunk_count(std::size_t n) {
    return n == 0 ? 0 : (n + kChunkSize - 1) / kChunkSize;
}

void parallel_chunks(std::size_t n,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& fn) {
    const std::size_t chunks = chunk_count(n);
    if (chunks == 0) return;
    const int workers = worker_threads();
    if (workers <= 1 || chunks == 1) {
        for (std::size_t c = 0; c < chunks; ++c)
            fn(c, c * kChunkSize, std::min(n, (c + 1) * kChunkSize));
        return;
    }
    std::atomic<std::size_t> next{0};
    auto run = [&] {
        for (;;) {
            const std::size_t c = next.fetch_add(1);
            if (c >= chunks) break;
            fn(c, c * kChunkSize, std::min(n, (c + 1) * kChunkSize));
        }
    };
    std::vector<std::thread> pool;
    const int spawn = std::min<std::size_t>(workers, chunks);
    pool.reserve(spawn > 0 ? spawn - 1 : 0);
    for (int i = 1; i < spawn; ++i) pool.emplace_back(run);
    run();
    for (auto& t : pool) t.join();
}

} // namespace hypcone
