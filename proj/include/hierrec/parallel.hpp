#pragma once

#include <cstddef>
#include <functional>

namespace hierrec {

// Deterministic work distribution. Results must be written to slots keyed
// by item or block index, never accumulated across workers; callers then
// reduce the slots in index order. The block partition depends only on
// (n, block_size), so outputs are byte-identical for any thread count.

// Runs fn(begin, end) over a fixed partition of [0, n) into blocks of
// block_size; blocks are claimed dynamically by up to `threads` workers.
void parallel_blocks(std::size_t n, std::size_t block_size, int threads,
                     const std::function<void(std::size_t block_index, std::size_t begin,
                                              std::size_t end)>& fn);

// Convenience: one item per call.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);

inline std::size_t block_count(std::size_t n, std::size_t block_size) {
    return (n + block_size - 1) / block_size;
}

}  // namespace hierrec
