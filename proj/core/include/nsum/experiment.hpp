#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <vector>

#include "nsum/encrypt.hpp"
#include "nsum/lexicon.hpp"

namespace nsum {

struct ExperimentConfig {
    enum class Mode { random, related };

    std::uint64_t pair_count = 1000;
    std::size_t words_per_message = 20;
    Mode mode = Mode::random;
    std::uint32_t n = 2;
    bool dedup = false;
    std::uint64_t seed = 0;
    double bin_width_percent = 0.0; // 0 = per-mode default (0.05 random, 2 related)
    unsigned threads = 1;           // 0 = all hardware threads
};

struct OverlapHistogram {
    double bin_width_percent = 0.0;
    std::map<std::uint64_t, std::uint64_t> bins; // bin index -> count
    double mean_percent = 0.0;
    double mode_percent = 0.0; // midpoint of the fullest bin
    std::uint64_t pair_count = 0;
    std::uint64_t skipped_synset_members = 0; // related mode diagnostics
};

/// n_words distinct words sampled uniformly without replacement.
/// Deterministic per seed; trials may run in parallel without changing
/// results because per-trial seeds derive from (seed, trial index).
Message gen_random_message(const Lexicon& lexicon, std::size_t n_words,
                           std::uint64_t seed);

struct RelatedMessage {
    Message message;        // deduplicated, may be shorter than the source
    std::size_t skipped = 0; // unresolvable synset members passed over
};

/// For each source word, draw one resolvable member of its synset and map
/// it back to a word through the lexicon inverse. Unresolvable members are
/// skipped and counted; a word with none is an error.
RelatedMessage gen_related_message(const Lexicon& lexicon, const Message& source,
                                   std::uint64_t seed);

/// Encrypt pair_count message pairs and histogram the percent overlap
/// 100 * xi between them.
OverlapHistogram run_overlap(const Lexicon& lexicon, const ExperimentConfig& config);

struct SweepRow {
    std::size_t length = 0;
    double mean_overlap_percent = 0.0;
};

/// Mean random-pair overlap per message length; the trend toward 100% as
/// lengths approach the saturation bound is the saturation effect.
std::vector<SweepRow> saturation_sweep(const Lexicon& lexicon,
                                       std::span<const std::size_t> lengths,
                                       std::uint64_t pairs_per_length,
                                       std::uint64_t seed, unsigned threads = 1);

/// CSV rows `bin_lo_percent,bin_hi_percent,count` followed by the summary
/// lines `#mean=` and `#mode=`. Byte-identical for identical histograms.
void write_histogram_csv(std::ostream& out, const OverlapHistogram& hist);

} // namespace nsum
