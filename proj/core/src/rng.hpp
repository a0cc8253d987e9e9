#pragma once

#include <bit>
#include <cstdint>

namespace nsum::detail {

// splitmix64. Integer-only state transitions keep seeded runs bit-identical
// across platforms, which std:: distributions do not guarantee.
struct SplitMix64 {
    std::uint64_t state = 0;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
};

inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Per-trial sub-seed so parallel trials never share a stream.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    return mix64(master ^ mix64(index + 1));
}

// Uniform integer in [0, bound) via mask rejection.
inline std::uint64_t uniform_below(SplitMix64& rng, std::uint64_t bound) {
    if (bound <= 1) return 0;
    const std::uint64_t mask = ~std::uint64_t{0} >> std::countl_zero(bound - 1);
    for (;;) {
        const std::uint64_t v = rng.next() & mask;
        if (v < bound) return v;
    }
}

// Geometric on {1, 2, ...} with the given mean, clamped at cap.
// Sampled as a run of Bernoulli trials with p = 1/mean.
inline std::uint64_t geometric_min1(SplitMix64& rng, double mean, std::uint64_t cap) {
    if (mean <= 1.0) return 1;
    const auto threshold = static_cast<std::uint64_t>(0x1p64 / mean);
    std::uint64_t k = 1;
    while (k < cap && rng.next() >= threshold) ++k;
    return k;
}

} // namespace nsum::detail
