#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace nsum {

using WordId = std::uint32_t;

/// One dictionary entry: the word, its unique id, and its synset.
/// The synset is kept sorted, holds distinct ids only, and always contains
/// the entry's own id.
struct WordEntry {
    std::string word;
    WordId id = 0;
    std::vector<WordId> synset;

    bool operator==(const WordEntry&) const = default;
};

/// Distribution of synset sizes over a lexicon.
struct SynsetStats {
    std::map<std::size_t, std::uint64_t> histogram; // size -> word count
    double mean_size = 0.0;
    std::size_t max_size = 0;
    std::size_t mode_size = 0; // smallest size among the most frequent
    std::uint64_t total_words = 0;
};

/// Combined dictionary and thesaurus: word -> (id, synset) with an
/// id -> word inverse. Immutable once built; concurrent reads are safe.
class Lexicon {
public:
    Lexicon() = default;
    explicit Lexicon(WordId i_max);

    /// Parse the TSV lexicon format. Rejects structural problems with the
    /// offending line number.
    static Lexicon load(const std::filesystem::path& path);

    /// Write the TSV format; load(save(x)) reproduces x exactly.
    void save(const std::filesystem::path& path) const;

    /// Append an entry, enforcing id uniqueness, ranges, and synset rules.
    /// The synset is sorted and must not contain duplicates.
    void add_entry(WordEntry entry);

    std::size_t word_count() const { return entries_.size(); }
    WordId i_max() const { return i_max_; }

    const WordEntry* find(std::string_view word) const;
    const WordEntry& at(std::size_t index) const { return entries_[index]; }
    const WordEntry* by_id(WordId id) const;

    /// Synset of a dictionary word, or the singleton hashed synset of an
    /// unknown one. Unknown words always map into (i_max, 2*i_max], so they
    /// never collide with dictionary synsets.
    std::vector<WordId> synset_of(std::string_view word) const;

    /// Deterministic id assigned to a word outside the dictionary.
    WordId unknown_word_id(std::string_view word) const;

    /// Histogram, mean, max and mode of synset sizes. Errors on an empty
    /// lexicon (the mean is undefined).
    SynsetStats stats() const;

    /// Synset members with no inverse mapping, summed over all entries.
    std::uint64_t unresolved_synset_members() const;

    bool operator==(const Lexicon&) const;

private:
    WordId i_max_ = 0;
    std::vector<WordEntry> entries_;
    std::unordered_map<std::string, std::uint32_t> word_index_;
    std::unordered_map<WordId, std::uint32_t> id_index_;
};

/// Parameters for the deterministic synthetic lexicon generator.
struct SyntheticConfig {
    std::size_t word_count = 1000;
    WordId i_max = 20'000'000;
    double mean_synset = 10.0;
    std::size_t cluster_size = 5;
    std::uint64_t seed = 0;
};

/// Build a clustered random lexicon that stands in for a real thesaurus.
/// Words are partitioned into consecutive clusters; members of one cluster
/// share at least two synset ids (and usually each other's ids), so
/// same-cluster words are measurably closer than cross-cluster ones.
/// Synset sizes follow a truncated geometric law with the requested mean.
/// Bit-identical output for identical parameters and seed.
Lexicon generate_synthetic(const SyntheticConfig& config);

} // namespace nsum
