#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "nsum/lexicon.hpp"

namespace nsum {

/// Normalized bag of words: lowercase alphanumeric tokens, duplicates
/// dropped, first-occurrence order kept.
struct Message {
    std::vector<std::string> words;

    std::size_t size() const { return words.size(); }
    bool operator==(const Message&) const = default;
};

using StopwordSet = std::unordered_set<std::string>;

/// Split on any non-alphanumeric character, lowercase, drop empty tokens,
/// deduplicate. Bytes >= 0x80 are treated as word characters so UTF-8
/// words survive; only ASCII letters are case-folded.
Message tokenize(std::string_view text);
Message tokenize(std::string_view text, const StopwordSet& stopwords);

/// One stopword per line, normalized with the same tokenizer rules.
StopwordSet load_stopwords(const std::filesystem::path& path);

/// n-Sum encryption: the multiset of all sums of n synset elements drawn
/// one each from n distinct message words.
struct SumSet {
    std::uint32_t n = 2;
    bool dedup = false;
    std::vector<std::uint64_t> values; // sorted; strictly increasing when dedup

    std::size_t size() const { return values.size(); }
    bool operator==(const SumSet&) const = default;
};

/// Encrypt a message at arity n. Requires 1 <= n <= N where N is the number
/// of distinct tokens. With dedup=false the result keeps every sum, so its
/// cardinality is the sum over n-subsets of the synset size products.
SumSet encrypt(const Lexicon& lexicon, const Message& message, std::uint32_t n,
               bool dedup = false);

/// Message-length guideline (2*n*i_max)^(1/n) / mean_synset. Matching
/// degrades as N approaches this bound; it is a soft limit, not an error.
double saturation_bound(std::uint32_t n, std::uint64_t i_max, double mean_synset);

struct SizeEstimate {
    std::uint64_t integer_count = 0;
    std::uint64_t byte_estimate = 0; // one byte per integer after compression
};

/// (N^n / n) * mean^n integers, rounded to nearest.
SizeEstimate estimate_size(std::uint32_t n, std::uint64_t n_words, double mean_synset);

} // namespace nsum
