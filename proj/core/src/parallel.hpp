#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace nsum::detail {

inline unsigned resolve_threads(unsigned requested) {
    if (requested != 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw != 0 ? hw : 1;
}

// Static split of [begin, end) into at most `threads` contiguous chunks.
// fn(chunk_index, chunk_begin, chunk_end) runs once per chunk; chunk 0 is
// the lowest range, so callers can merge results deterministically.
template <typename Fn>
void parallel_chunks(std::size_t begin, std::size_t end, unsigned threads, Fn&& fn) {
    const std::size_t total = end > begin ? end - begin : 0;
    if (total == 0) return;

    threads = resolve_threads(threads);
    std::size_t chunks = threads;
    if (chunks > total) chunks = total;

    if (chunks == 1) {
        fn(std::size_t{0}, begin, end);
        return;
    }

    std::vector<std::thread> workers;
    workers.reserve(chunks);
    const std::size_t step = total / chunks;
    const std::size_t rem = total % chunks;
    std::size_t lo = begin;
    for (std::size_t c = 0; c < chunks; ++c) {
        const std::size_t hi = lo + step + (c < rem ? 1 : 0);
        workers.emplace_back([&fn, c, lo, hi] { fn(c, lo, hi); });
        lo = hi;
    }
    for (auto& w : workers) w.join();
}

} // namespace nsum::detail
