#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace matsum {

int default_thread_count();

// Number of chunks parallel_chunks will use; callers size their per-chunk
// accumulator arrays with this.
inline std::uint64_t parallel_chunk_count(std::uint64_t total, int threads,
                                          int chunks_per_thread = 4) {
    if (threads < 1) threads = 1;
    std::uint64_t n_chunks = static_cast<std::uint64_t>(threads) * chunks_per_thread;
    if (n_chunks > total) n_chunks = total ? total : 1;
    return n_chunks;
}

// Splits [0, total) into contiguous chunks and runs `work(chunk_index,
// start, end)` across `threads` workers. Chunk boundaries depend only on
// (total, threads, chunks_per_thread), and every reduction in this codebase
// merges per-chunk integer accumulators, so results are bit-identical for
// any worker count.
template <typename Work>
void parallel_chunks(std::uint64_t total, int threads, int chunks_per_thread, Work&& work) {
    if (threads < 1) threads = 1;
    const std::uint64_t n_chunks = parallel_chunk_count(total, threads, chunks_per_thread);
    if (threads == 1) {
        for (std::uint64_t c = 0; c < n_chunks; ++c) {
            std::uint64_t start = total / n_chunks * c + std::min<std::uint64_t>(c, total % n_chunks);
            std::uint64_t len = total / n_chunks + (c < total % n_chunks ? 1 : 0);
            work(c, start, start + len);
        }
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    std::atomic<std::uint64_t> next{0};
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&]() {
            for (;;) {
                std::uint64_t c = next.fetch_add(1);
                if (c >= n_chunks) return;
                std::uint64_t start = total / n_chunks * c + std::min<std::uint64_t>(c, total % n_chunks);
                std::uint64_t len = total / n_chunks + (c < total % n_chunks ? 1 : 0);
                work(c, start, start + len);
            }
        });
    }
    for (auto& th : pool) th.join();
}

} // namespace matsum
