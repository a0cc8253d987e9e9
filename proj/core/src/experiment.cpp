#include "nsum/experiment.hpp"

#include <algorithm>
#include <cstdio>
#include <exception>
#include <numeric>
#include <ostream>
#include <unordered_set>

#include "nsum/error.hpp"
#include "nsum/match.hpp"
#include "parallel.hpp"
#include "rng.hpp"

namespace nsum {

namespace {

double default_bin_width(ExperimentConfig::Mode mode) {
    return mode == ExperimentConfig::Mode::related ? 2.0 : 0.05;
}

struct TrialResult {
    double overlap_percent = 0.0;
    std::uint64_t skipped = 0;
};

TrialResult overlap_trial(const Lexicon& lexicon, const ExperimentConfig& config,
                          std::uint64_t trial) {
    const std::uint64_t seed_a = detail::derive_seed(config.seed, 2 * trial);
    const std::uint64_t seed_b = detail::derive_seed(config.seed, 2 * trial + 1);

    const Message a = gen_random_message(lexicon, config.words_per_message, seed_a);
    TrialResult result;
    Message b;
    if (config.mode == ExperimentConfig::Mode::related) {
        RelatedMessage related = gen_related_message(lexicon, a, seed_b);
        b = std::move(related.message);
        result.skipped = related.skipped;
    } else {
        b = gen_random_message(lexicon, config.words_per_message, seed_b);
    }

    const SumSet probe = encrypt(lexicon, a, config.n, config.dedup);
    const SumSet target = encrypt(lexicon, b, config.n, config.dedup);
    result.overlap_percent = 100.0 * total_match(probe, target).xi;
    return result;
}

void rethrow_first(const std::vector<std::exception_ptr>& errors) {
    for (const auto& error : errors)
        if (error) std::rethrow_exception(error);
}

} // namespace

Message gen_random_message(const Lexicon& lexicon, std::size_t n_words,
                           std::uint64_t seed) {
    if (n_words == 0) throw DomainError("message length must be positive");
    if (lexicon.word_count() < n_words)
        throw DomainError("lexicon has " + std::to_string(lexicon.word_count()) +
                          " words, need " + std::to_string(n_words) + " distinct");

    detail::SplitMix64 rng(seed);
    std::vector<std::uint32_t> pool(lexicon.word_count());
    std::iota(pool.begin(), pool.end(), 0);

    Message message;
    message.words.reserve(n_words);
    for (std::size_t k = 0; k < n_words; ++k) {
        const std::size_t pick =
            k + detail::uniform_below(rng, pool.size() - k);
        std::swap(pool[k], pool[pick]);
        message.words.push_back(lexicon.at(pool[k]).word);
    }
    return message;
}

RelatedMessage gen_related_message(const Lexicon& lexicon, const Message& source,
                                   std::uint64_t seed) {
    if (source.words.empty()) throw DomainError("empty source message");

    detail::SplitMix64 rng(seed);
    RelatedMessage out;
    std::unordered_set<std::string_view> seen; // views into lexicon storage
    for (const std::string& word : source.words) {
        const std::vector<WordId> synset = lexicon.synset_of(word);
        std::vector<const WordEntry*> resolvable;
        resolvable.reserve(synset.size());
        for (WordId id : synset) {
            if (const WordEntry* entry = lexicon.by_id(id))
                resolvable.push_back(entry);
            else
                ++out.skipped;
        }
        if (resolvable.empty())
            throw DomainError("no resolvable synonym for '" + word + "'");
        const WordEntry* pick =
            resolvable[detail::uniform_below(rng, resolvable.size())];
        if (seen.insert(pick->word).second) out.message.words.push_back(pick->word);
    }
    return out;
}

OverlapHistogram run_overlap(const Lexicon& lexicon, const ExperimentConfig& config) {
    if (config.pair_count == 0) throw DomainError("pair_count must be positive");
    if (config.n == 0) throw DomainError("arity must be at least 1");
    if (config.words_per_message < config.n)
        throw DomainError("words_per_message must be at least the arity");
    double width = config.bin_width_percent;
    if (width == 0.0) width = default_bin_width(config.mode);
    if (!(width > 0.0)) throw DomainError("bin width must be positive");

    std::vector<double> overlaps(config.pair_count, 0.0);
    std::vector<std::uint64_t> skipped(config.pair_count, 0);
    const unsigned workers = detail::resolve_threads(config.threads);
    std::vector<std::exception_ptr> errors(workers);

    detail::parallel_chunks(0, config.pair_count, workers,
                            [&](std::size_t chunk, std::size_t lo, std::size_t hi) {
                                try {
                                    for (std::size_t t = lo; t < hi; ++t) {
                                        const TrialResult r =
                                            overlap_trial(lexicon, config, t);
                                        overlaps[t] = r.overlap_percent;
                                        skipped[t] = r.skipped;
                                    }
                                } catch (...) {
                                    errors[chunk] = std::current_exception();
                                }
                            });
    rethrow_first(errors);

    OverlapHistogram hist;
    hist.bin_width_percent = width;
    hist.pair_count = config.pair_count;
    double sum = 0.0;
    for (std::size_t t = 0; t < overlaps.size(); ++t) {
        sum += overlaps[t];
        hist.skipped_synset_members += skipped[t];
        ++hist.bins[static_cast<std::uint64_t>(overlaps[t] / width)];
    }
    hist.mean_percent = sum / static_cast<double>(config.pair_count);

    std::uint64_t best_bin = 0;
    std::uint64_t best_count = 0;
    for (const auto& [bin, count] : hist.bins) {
        if (count > best_count) { // ties keep the lowest bin
            best_count = count;
            best_bin = bin;
        }
    }
    hist.mode_percent = (static_cast<double>(best_bin) + 0.5) * width;
    return hist;
}

std::vector<SweepRow> saturation_sweep(const Lexicon& lexicon,
                                       std::span<const std::size_t> lengths,
                                       std::uint64_t pairs_per_length,
                                       std::uint64_t seed, unsigned threads) {
    if (lengths.empty()) throw DomainError("no message lengths given");
    if (pairs_per_length == 0) throw DomainError("pairs_per_length must be positive");
    for (const std::size_t length : lengths)
        if (length < 2) throw DomainError("message length below arity 2");

    std::vector<SweepRow> rows;
    rows.reserve(lengths.size());
    for (std::size_t li = 0; li < lengths.size(); ++li) {
        const std::size_t length = lengths[li];
        const std::uint64_t base = detail::derive_seed(seed, li);

        std::vector<double> overlaps(pairs_per_length, 0.0);
        const unsigned workers = detail::resolve_threads(threads);
        std::vector<std::exception_ptr> errors(workers);
        detail::parallel_chunks(
            0, pairs_per_length, workers,
            [&](std::size_t chunk, std::size_t lo, std::size_t hi) {
                try {
                    for (std::size_t t = lo; t < hi; ++t) {
                        const Message a = gen_random_message(
                            lexicon, length, detail::derive_seed(base, 2 * t));
                        const Message b = gen_random_message(
                            lexicon, length, detail::derive_seed(base, 2 * t + 1));
                        const SumSet sa = encrypt(lexicon, a, 2, false);
                        const SumSet sb = encrypt(lexicon, b, 2, false);
                        overlaps[t] = 100.0 * total_match(sa, sb).xi;
                    }
                } catch (...) {
                    errors[chunk] = std::current_exception();
                }
            });
        rethrow_first(errors);

        const double sum = std::accumulate(overlaps.begin(), overlaps.end(), 0.0);
        rows.push_back({length, sum / static_cast<double>(pairs_per_length)});
    }
    return rows;
}

void write_histogram_csv(std::ostream& out, const OverlapHistogram& hist) {
    char buf[96];
    out << "bin_lo_percent,bin_hi_percent,count\n";
    for (const auto& [bin, count] : hist.bins) {
        const double lo = static_cast<double>(bin) * hist.bin_width_percent;
        const double hi = static_cast<double>(bin + 1) * hist.bin_width_percent;
        std::snprintf(buf, sizeof buf, "%.6f,%.6f,", lo, hi);
        out << buf << count << '\n';
    }
    std::snprintf(buf, sizeof buf, "#mean=%.6f\n#mode=%.6f\n", hist.mean_percent,
                  hist.mode_percent);
    out << buf;
}

} // namespace nsum
