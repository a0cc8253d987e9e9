#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "nsum/encrypt.hpp"

namespace nsum::codec {

/// Binary blob format v1. All multi-byte header fields little-endian:
///   bytes 0-3   magic "NSUM"
///   byte  4     version (1)
///   byte  5     arity n
///   byte  6     flags, bit 0 = dedup
///   byte  7     reserved (0)
///   bytes 8-15  value count, u64
///   bytes 16-19 base = lowest value, u32 (omitted when count == 0)
/// followed by count-1 deltas, each a little-endian sequence of base-1024
/// digit groups: 1 continuation bit then a 10-bit digit, minimal length.
/// Units are packed MSB-first into bytes; the final partial byte is
/// zero-padded.
struct BlobInfo {
    std::uint8_t version = 1;
    std::uint32_t n = 0;
    bool dedup = false;
    std::uint64_t count = 0;
    std::uint32_t base = 0;
    std::size_t byte_size = 0;
    std::size_t payload_bits = 0; // exact bits consumed by delta units
};

/// Serialize a sum-set. Requires sorted values that fit in 32 bits.
/// Byte-identical for identical inputs.
std::vector<std::uint8_t> encode(const SumSet& sumset);

/// Exact inverse of encode. Rejects bad magic, unsupported versions,
/// truncation, nonzero padding, non-minimal digits and inconsistent
/// lengths, reporting the offending position.
SumSet decode(std::span<const std::uint8_t> blob);

/// Validate a blob and return its header and payload accounting without
/// materializing the values.
BlobInfo inspect(std::span<const std::uint8_t> blob);

void write_file(const std::filesystem::path& path, const SumSet& sumset);
SumSet read_file(const std::filesystem::path& path);

} // namespace nsum::codec
