#include "nsum/match.hpp"

#include <algorithm>

#include "nsum/error.hpp"

namespace nsum {

std::uint64_t match_count(std::span<const std::uint64_t> probe_sorted,
                          const SumSet& target) {
    const auto& t = target.values;
    std::size_t i = 0;
    std::size_t j = 0;
    std::uint64_t matched = 0;
    if (target.dedup) {
        // The target lost its multiplicities; every probe copy of a present
        // value counts.
        while (i < probe_sorted.size() && j < t.size()) {
            if (probe_sorted[i] < t[j]) {
                ++i;
            } else if (t[j] < probe_sorted[i]) {
                ++j;
            } else {
                const std::uint64_t v = probe_sorted[i];
                while (i < probe_sorted.size() && probe_sorted[i] == v) {
                    ++matched;
                    ++i;
                }
                ++j;
            }
        }
    } else {
        while (i < probe_sorted.size() && j < t.size()) {
            if (probe_sorted[i] < t[j]) {
                ++i;
            } else if (t[j] < probe_sorted[i]) {
                ++j;
            } else {
                ++matched;
                ++i;
                ++j;
            }
        }
    }
    return matched;
}

MatchReport total_match(const SumSet& probe, const SumSet& target) {
    if (probe.n != target.n)
        throw DomainError("arity mismatch: probe n=" + std::to_string(probe.n) +
                          ", target n=" + std::to_string(target.n));
    if (probe.values.empty()) throw DomainError("empty probe");

    MatchReport report;
    report.probe_size = probe.values.size();
    report.matched_count = match_count(probe.values, target);
    report.xi = static_cast<double>(report.matched_count) /
                static_cast<double>(report.probe_size);
    return report;
}

PairProbe pair_probe(const Lexicon& lexicon, std::string_view x, std::string_view y) {
    if (x == y) throw DomainError("pair probe needs two distinct words");

    PairProbe probe;
    probe.word_x = std::string(x);
    probe.word_y = std::string(y);

    const auto sx = lexicon.synset_of(x);
    const auto sy = lexicon.synset_of(y);
    probe.values.reserve(sx.size() * sy.size());
    for (WordId a : sx)
        for (WordId b : sy)
            probe.values.push_back(static_cast<std::uint64_t>(a) + b);
    std::sort(probe.values.begin(), probe.values.end());
    return probe;
}

double word_pair_match(const PairProbe& probe, const SumSet& target) {
    if (target.n != 2)
        throw DomainError("word-pair matching needs an arity-2 target, got n=" +
                          std::to_string(target.n));
    if (probe.values.empty()) throw DomainError("empty pair probe");
    return static_cast<double>(match_count(probe.values, target)) /
           static_cast<double>(probe.values.size());
}

} // namespace nsum
