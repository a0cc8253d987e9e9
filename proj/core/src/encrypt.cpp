#include "nsum/encrypt.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <unordered_set>

#include "nsum/error.hpp"

namespace nsum {

namespace {

bool is_token_char(unsigned char c) {
    // Bytes >= 0x80 keep UTF-8 sequences intact.
    return std::isalnum(c) != 0 || c >= 0x80;
}

char fold(unsigned char c) {
    return c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a') : static_cast<char>(c);
}

Message tokenize_impl(std::string_view text, const StopwordSet* stopwords) {
    Message message;
    std::unordered_set<std::string> seen;
    std::string token;
    auto flush = [&] {
        if (token.empty()) return;
        if ((stopwords == nullptr || !stopwords->contains(token)) && seen.insert(token).second)
            message.words.push_back(token);
        token.clear();
    };
    for (unsigned char c : text) {
        if (is_token_char(c))
            token.push_back(fold(c));
        else
            flush();
    }
    flush();
    return message;
}

} // namespace

Message tokenize(std::string_view text) { return tokenize_impl(text, nullptr); }

Message tokenize(std::string_view text, const StopwordSet& stopwords) {
    return tokenize_impl(text, &stopwords);
}

StopwordSet load_stopwords(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open stopword file '" + path.string() + "'");
    StopwordSet set;
    std::string line;
    while (std::getline(in, line))
        for (auto& word : tokenize(line).words) set.insert(std::move(word));
    return set;
}

SumSet encrypt(const Lexicon& lexicon, const Message& message, std::uint32_t n, bool dedup) {
    // Repeated tokens would pair a word with itself; drop them up front.
    std::vector<std::string_view> words;
    {
        std::unordered_set<std::string_view> seen;
        for (const auto& w : message.words)
            if (seen.insert(w).second) words.push_back(w);
    }
    const std::size_t word_count = words.size();

    if (word_count == 0) throw DomainError("cannot encrypt an empty message");
    if (n < 1) throw DomainError("arity must be at least 1");
    if (n > word_count)
        throw DomainError("n exceeds message length (n=" + std::to_string(n) +
                          ", N=" + std::to_string(word_count) + ")");

    std::vector<std::vector<WordId>> synsets;
    synsets.reserve(word_count);
    for (const auto& w : words) synsets.push_back(lexicon.synset_of(w));

    // Multiset cardinality: sum over n-subsets of the synset size products.
    std::vector<std::uint64_t> combos(n + 1, 0);
    combos[0] = 1;
    for (const auto& synset : synsets)
        for (std::uint32_t k = n; k >= 1; --k)
            combos[k] += combos[k - 1] * synset.size();

    SumSet result;
    result.n = n;
    result.dedup = dedup;
    result.values.reserve(combos[n]);

    auto walk = [&](auto&& self, std::size_t first, std::uint32_t remaining,
                    std::uint64_t partial) -> void {
        if (remaining == 0) {
            result.values.push_back(partial);
            return;
        }
        for (std::size_t i = first; i + remaining <= word_count; ++i)
            for (WordId v : synsets[i]) self(self, i + 1, remaining - 1, partial + v);
    };
    walk(walk, 0, n, 0);

    std::sort(result.values.begin(), result.values.end());
    if (dedup)
        result.values.erase(std::unique(result.values.begin(), result.values.end()),
                            result.values.end());
    return result;
}

double saturation_bound(std::uint32_t n, std::uint64_t i_max, double mean_synset) {
    if (n < 1) throw DomainError("arity must be at least 1");
    if (i_max < 1) throw DomainError("i_max must be positive");
    if (!(mean_synset > 0.0)) throw DomainError("mean_synset must be positive");
    const double space = 2.0 * static_cast<double>(n) * static_cast<double>(i_max);
    return std::pow(space, 1.0 / static_cast<double>(n)) / mean_synset;
}

SizeEstimate estimate_size(std::uint32_t n, std::uint64_t n_words, double mean_synset) {
    if (n < 1) throw DomainError("arity must be at least 1");
    if (n_words < n) throw DomainError("n_words must be at least n");
    if (!(mean_synset > 0.0)) throw DomainError("mean_synset must be positive");
    const double count = std::pow(static_cast<double>(n_words), static_cast<double>(n)) /
                         static_cast<double>(n) *
                         std::pow(mean_synset, static_cast<double>(n));
    SizeEstimate estimate;
    estimate.integer_count = static_cast<std::uint64_t>(std::llround(count));
    estimate.byte_estimate = estimate.integer_count;
    return estimate;
}

} // namespace nsum
