#pragma once

#include <unistd.h>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "nsum/lexicon.hpp"

namespace testutil {

/// The three-word lexicon used throughout: dog/cat share two synset ids,
/// dog/rock share one.
inline nsum::Lexicon toy_lexicon() {
    nsum::Lexicon lexicon(100);
    lexicon.add_entry({"dog", 11, {2, 11, 13}});
    lexicon.add_entry({"cat", 15, {2, 11, 15}});
    lexicon.add_entry({"rock", 33, {2, 33, 52}});
    return lexicon;
}

/// Per-process scratch directory; tests may collide on fixed names inside
/// one binary but not across binaries.
inline std::filesystem::path scratch_dir(const std::string& binary_tag) {
    const auto dir = std::filesystem::temp_directory_path() /
                     ("nsum-" + binary_tag + "-" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    return dir;
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

inline std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// mersenne twister is bit-specified by the standard; raw draws plus modulo
/// keep test data reproducible without the unspecified distributions.
struct TestRng {
    std::mt19937_64 engine;

    explicit TestRng(std::uint64_t seed) : engine(seed) {}

    std::uint64_t below(std::uint64_t bound) { return engine() % bound; }
    bool coin() { return (engine() & 1) != 0; }
};

} // namespace testutil
