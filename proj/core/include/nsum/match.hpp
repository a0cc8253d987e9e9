#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "nsum/encrypt.hpp"
#include "nsum/lexicon.hpp"

namespace nsum {

/// Total matching: the fraction of a probe sum-set contained in a target.
/// Asymmetric by construction; the probe is the denominator.
struct MatchReport {
    double xi = 0.0;
    std::uint64_t matched_count = 0;
    std::uint64_t probe_size = 0;
};

/// All |synset(x)| * |synset(y)| pair sums for two words, sorted,
/// duplicates kept.
struct PairProbe {
    std::string word_x;
    std::string word_y;
    std::vector<std::uint64_t> values;
};

/// Multiset intersection size of a sorted probe against a target: the sum
/// over distinct values of min(probe count, target count). A deduplicated
/// target has lost its multiplicities, so matching degenerates to a
/// presence test there.
std::uint64_t match_count(std::span<const std::uint64_t> probe_sorted,
                          const SumSet& target);

MatchReport total_match(const SumSet& probe, const SumSet& target);

PairProbe pair_probe(const Lexicon& lexicon, std::string_view x, std::string_view y);

/// Word-pair matching: fraction of the pair probe covered by an arity-2
/// target. Equals 1 exactly when the target message contains both words
/// (dedup=false targets).
double word_pair_match(const PairProbe& probe, const SumSet& target);

} // namespace nsum
