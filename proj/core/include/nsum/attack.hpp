#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "nsum/encrypt.hpp"
#include "nsum/lexicon.hpp"

namespace nsum {

/// A word pair whose probe coverage of the target reached the threshold.
struct FoundPair {
    std::string word_x; // smaller id first
    std::string word_y;
    double zeta = 0.0;

    bool operator==(const FoundPair&) const = default;
};

struct CrackProgress {
    std::uint64_t next_pair = 0; // linear index into the (id,id)-ordered enumeration
    std::uint64_t total_pairs = 0;
    std::uint64_t pairs_tested = 0;
    const std::vector<FoundPair>* found = nullptr;
};

struct CrackOptions {
    unsigned threads = 1; // 0 = all hardware threads
    std::uint64_t start_pair = 0; // resume point in the pair enumeration
    std::uint64_t checkpoint_interval = 1'000'000;
    std::function<void(const CrackProgress&)> on_checkpoint;
};

struct CrackResult {
    std::vector<FoundPair> found_pairs; // ordered by (id, id)
    std::uint64_t pairs_tested = 0;
    std::chrono::duration<double> elapsed{0};
    double pairs_per_second = 0.0;
};

/// Number of unordered word pairs, C(word_count, 2).
std::uint64_t pair_count(std::uint64_t word_count);

/// Brute-force search over every unordered dictionary word pair, reporting
/// each one whose zeta against the target reaches the threshold. Candidates
/// are enumerated lexicographically by (id, id); the result is identical
/// for any worker count.
CrackResult crack_s2(const Lexicon& lexicon, const SumSet& target,
                     double threshold = 1.0, const CrackOptions& options = {});

/// Search only the pairs containing one known word; O(|D|) candidates.
/// Unknown known words resolve through the hashing rule.
CrackResult extend_crack(const Lexicon& lexicon, const SumSet& target,
                         std::string_view known_word, double threshold = 1.0,
                         unsigned threads = 1);

struct BenchReport {
    std::uint64_t sample_pairs = 0;
    double elapsed_seconds = 0.0;
    double pairs_per_second = 0.0;
    std::uint64_t lexicon_pairs = 0;  // C(word_count, 2)
    double full_search_seconds = 0.0; // lexicon_pairs / rate
};

/// Measure inclusion-test throughput on a random pair sample and
/// extrapolate to a full search of the lexicon.
BenchReport benchmark_attack(const Lexicon& lexicon, const SumSet& target,
                             std::uint64_t sample_pairs, std::uint64_t seed = 1);

} // namespace nsum
