#include "hierrec/parallel.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace hierrec {

void parallel_blocks(std::size_t n, std::size_t block_size, int threads,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& fn) {
    if (n == 0) return;
    const std::size_t nblocks = block_count(n, block_size);
    if (threads <= 1 || nblocks == 1) {
        for (std::size_t b = 0; b < nblocks; ++b) {
            const std::size_t begin = b * block_size;
            fn(b, begin, std::min(begin + block_size, n));
        }
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;

    auto worker = [&] {
        for (;;) {
            const std::size_t b = next.fetch_add(1, std::memory_order_relaxed);
            if (b >= nblocks) return;
            try {
                const std::size_t begin = b * block_size;
                fn(b, begin, std::min(begin + block_size, n));
            } catch (...) {
                std::scoped_lock lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };

    const std::size_t nworkers =
        std::min<std::size_t>(static_cast<std::size_t>(threads), nblocks);
    std::vector<std::jthread> pool;
    pool.reserve(nworkers);
    for (std::size_t t = 0; t < nworkers; ++t) pool.emplace_back(worker);
    pool.clear();  // join

    if (error) std::rethrow_exception(error);
}

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn) {
    parallel_blocks(n, 1, threads, [&](std::size_t, std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) fn(i);
    });
}

}  // namespace hierrec
