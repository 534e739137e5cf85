#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace bicmwb::detail {

/// Runs fn(i) for i in [0, n) on up to `threads` workers. Each index writes
/// to its own output slot, so results are independent of scheduling; callers
/// reduce in index order to keep outputs bit-identical across pool sizes.
template <typename Fn>
void parallel_for_indexed(std::size_t n, int threads, Fn&& fn) {
    if (n == 0) return;
    const int workers = std::max(1, std::min<int>(threads, static_cast<int>(n)));
    if (workers == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&]() {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n) break;
                fn(i);
            }
        });
    }
    for (auto& t : pool) t.join();
}

} // namespace bicmwb::detail
