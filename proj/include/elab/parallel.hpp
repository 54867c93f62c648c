#pragma once
// Deterministic parallel map. Work is cut into fixed-size blocks whose
// boundaries do not depend on the thread count; per-block results are merged
// in block order, so output is byte-identical for any --threads value.

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace elab {

// fn(block_index, begin, end) fills result slot block_index.
template <class Fn>
void for_blocks(uint64_t count, unsigned threads, uint64_t block_size, Fn&& fn) {
    if (count == 0) return;
    if (block_size == 0) block_size = 1;
    const uint64_t nblocks = (count + block_size - 1) / block_size;
    if (threads <= 1 || nblocks == 1) {
        for (uint64_t i = 0; i < nblocks; ++i)
            fn(i, i * block_size, std::min(count, (i + 1) * block_size));
        return;
    }
    std::atomic<uint64_t> next{0};
    auto worker = [&] {
        for (;;) {
            uint64_t i = next.fetch_add(1);
            if (i >= nblocks) break;
            fn(i, i * block_size, std::min(count, (i + 1) * block_size));
        }
    };
    std::vector<std::thread> pool;
    unsigned n = std::min<unsigned>(threads, static_cast<unsigned>(nblocks));
    pool.reserve(n);
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
}

}  // namespace elab
