#include "nsum/codec.hpp"

#include <array>
#include <fstream>
#include <limits>
#include <string>

#include "nsum/error.hpp"

namespace nsum::codec {

namespace {

constexpr std::array<std::uint8_t, 4> kMagic{'N', 'S', 'U', 'M'};
constexpr std::uint8_t kVersion = 1;
constexpr std::size_t kHeaderSize = 16;
constexpr std::size_t kBaseSize = 4;
constexpr unsigned kDigitBits = 10;
constexpr std::uint32_t kDigitBase = 1u << kDigitBits;
// A 32-bit delta never needs more than ceil(32/10) digit groups.
constexpr unsigned kMaxGroups = 4;
constexpr std::uint64_t kMaxValue = std::numeric_limits<std::uint32_t>::max();

struct BitWriter {
    std::vector<std::uint8_t>& out;
    std::uint8_t current = 0;
    unsigned filled = 0;

    void put_bits(std::uint32_t value, unsigned width) {
        for (unsigned b = width; b-- > 0;) {
            current = static_cast<std::uint8_t>((current << 1) | ((value >> b) & 1u));
            if (++filled == 8) {
                out.push_back(current);
                current = 0;
                filled = 0;
            }
        }
    }

    void flush() {
        if (filled != 0) {
            out.push_back(static_cast<std::uint8_t>(current << (8 - filled)));
            current = 0;
            filled = 0;
        }
    }
};

struct BitReader {
    std::span<const std::uint8_t> data;
    std::size_t bit_pos = 0;

    std::size_t bits_available() const { return data.size() * 8 - bit_pos; }

    std::uint32_t read_bits(unsigned width) {
        if (bits_available() < width)
            throw FormatError("truncated payload at bit " + std::to_string(bit_pos));
        std::uint32_t value = 0;
        for (unsigned b = 0; b < width; ++b) {
            const std::size_t p = bit_pos++;
            value = (value << 1) |
                    ((data[p >> 3] >> (7 - (p & 7))) & 1u);
        }
        return value;
    }
};

std::uint64_t read_u64_le(std::span<const std::uint8_t> bytes, std::size_t offset,
                          unsigned width) {
    std::uint64_t value = 0;
    for (unsigned b = 0; b < width; ++b)
        value |= static_cast<std::uint64_t>(bytes[offset + b]) << (8 * b);
    return value;
}

void write_u64_le(std::vector<std::uint8_t>& out, std::uint64_t value, unsigned width) {
    for (unsigned b = 0; b < width; ++b)
        out.push_back(static_cast<std::uint8_t>(value >> (8 * b)));
}

// Shared decode walk; fills values when requested, always returns accounting.
BlobInfo walk(std::span<const std::uint8_t> blob, std::vector<std::uint64_t>* values) {
    if (blob.size() < kMagic.size())
        throw FormatError("truncated header: " + std::to_string(blob.size()) + " bytes");
    for (std::size_t i = 0; i < kMagic.size(); ++i)
        if (blob[i] != kMagic[i]) throw FormatError("bad magic at byte " + std::to_string(i));
    if (blob.size() < kHeaderSize)
        throw FormatError("truncated header: " + std::to_string(blob.size()) + " bytes");

    BlobInfo info;
    info.byte_size = blob.size();
    info.version = blob[4];
    if (info.version != kVersion)
        throw FormatError("unsupported version " + std::to_string(info.version));
    info.n = blob[5];
    if (info.n == 0) throw FormatError("invalid arity 0");
    info.dedup = (blob[6] & 1u) != 0;
    info.count = read_u64_le(blob, 8, 8);

    if (info.count == 0) {
        if (blob.size() != kHeaderSize)
            throw FormatError("trailing bytes after empty payload at byte " +
                              std::to_string(kHeaderSize));
        return info;
    }

    if (blob.size() < kHeaderSize + kBaseSize)
        throw FormatError("truncated base value at byte " + std::to_string(blob.size()));
    info.base = static_cast<std::uint32_t>(read_u64_le(blob, kHeaderSize, kBaseSize));

    if (values != nullptr) {
        values->reserve(info.count);
        values->push_back(info.base);
    }

    BitReader reader{blob.subspan(kHeaderSize + kBaseSize)};
    std::uint64_t value = info.base;
    for (std::uint64_t i = 1; i < info.count; ++i) {
        std::uint64_t delta = 0;
        std::uint64_t scale = 1;
        unsigned groups = 0;
        for (;;) {
            const std::size_t unit_pos = reader.bit_pos;
            const bool more = reader.read_bits(1) != 0;
            const std::uint32_t digit = reader.read_bits(kDigitBits);
            delta += digit * scale;
            ++groups;
            if (!more) {
                if (groups > 1 && digit == 0)
                    throw FormatError("non-minimal delta encoding at bit " +
                                      std::to_string(unit_pos));
                break;
            }
            if (groups == kMaxGroups)
                throw FormatError("delta exceeds 32 bits at bit " +
                                  std::to_string(unit_pos));
            scale *= kDigitBase;
        }
        if (delta > kMaxValue)
            throw FormatError("delta out of range before value " + std::to_string(i));
        value += delta;
        if (value > kMaxValue)
            throw FormatError("value overflow at value " + std::to_string(i));
        if (values != nullptr) values->push_back(value);
    }

    info.payload_bits = reader.bit_pos;
    if (reader.bit_pos % 8 != 0) {
        const unsigned pad = 8 - static_cast<unsigned>(reader.bit_pos % 8);
        if (reader.read_bits(pad) != 0)
            throw FormatError("nonzero padding bits at bit " + std::to_string(info.payload_bits));
    }
    if (reader.bits_available() != 0)
        throw FormatError("trailing bytes after payload at byte " +
                          std::to_string(kHeaderSize + kBaseSize + reader.bit_pos / 8));
    return info;
}

} // namespace

std::vector<std::uint8_t> encode(const SumSet& sumset) {
    if (sumset.n == 0 || sumset.n > 255)
        throw DomainError("arity " + std::to_string(sumset.n) + " not encodable");
    for (std::size_t i = 0; i < sumset.values.size(); ++i) {
        if (sumset.values[i] > kMaxValue)
            throw DomainError("value " + std::to_string(sumset.values[i]) +
                              " does not fit in 32 bits");
        if (i > 0) {
            if (sumset.values[i] < sumset.values[i - 1])
                throw DomainError("unsorted input at index " + std::to_string(i));
            if (sumset.dedup && sumset.values[i] == sumset.values[i - 1])
                throw DomainError("duplicate value in deduplicated sum set at index " +
                                  std::to_string(i));
        }
    }

    std::vector<std::uint8_t> blob;
    blob.reserve(kHeaderSize + kBaseSize + sumset.values.size() * 2);
    for (const std::uint8_t byte : kMagic) blob.push_back(byte);
    blob.push_back(kVersion);
    blob.push_back(static_cast<std::uint8_t>(sumset.n));
    blob.push_back(sumset.dedup ? 1 : 0);
    blob.push_back(0);
    write_u64_le(blob, sumset.values.size(), 8);
    if (sumset.values.empty()) return blob;

    write_u64_le(blob, sumset.values.front(), 4);
    BitWriter writer{blob};
    for (std::size_t i = 1; i < sumset.values.size(); ++i) {
        auto delta = static_cast<std::uint32_t>(sumset.values[i] - sumset.values[i - 1]);
        for (;;) {
            const std::uint32_t digit = delta % kDigitBase;
            delta /= kDigitBase;
            writer.put_bits(delta != 0 ? 1 : 0, 1);
            writer.put_bits(digit, kDigitBits);
            if (delta == 0) break;
        }
    }
    writer.flush();
    return blob;
}

SumSet decode(std::span<const std::uint8_t> blob) {
    SumSet sumset;
    const BlobInfo info = walk(blob, &sumset.values);
    sumset.n = info.n;
    sumset.dedup = info.dedup;
    return sumset;
}

BlobInfo inspect(std::span<const std::uint8_t> blob) { return walk(blob, nullptr); }

void write_file(const std::filesystem::path& path, const SumSet& sumset) {
    const auto blob = encode(sumset);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("cannot write blob file '" + path.string() + "'");
    out.write(reinterpret_cast<const char*>(blob.data()),
              static_cast<std::streamsize>(blob.size()));
    if (!out) throw FormatError("write failed for '" + path.string() + "'");
}

SumSet read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open blob file '" + path.string() + "'");
    std::vector<std::uint8_t> blob((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
    return decode(blob);
}

} // namespace nsum::codec
