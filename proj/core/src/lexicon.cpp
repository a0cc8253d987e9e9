#include "nsum/lexicon.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <string>

#include "nsum/error.hpp"
#include "rng.hpp"

namespace nsum {

namespace {

constexpr std::string_view kHeaderPrefix = "#nsum-lexicon v1 imax=";

std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

bool parse_u32(std::string_view field, std::uint32_t& out) {
    const char* first = field.data();
    const char* last = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last && !field.empty();
}

[[noreturn]] void fail_line(const std::filesystem::path& path, std::size_t line,
                            const std::string& what) {
    throw FormatError(path.string() + ":" + std::to_string(line) + ": " + what);
}

} // namespace

Lexicon::Lexicon(WordId i_max) : i_max_(i_max) {
    if (i_max == 0) throw DomainError("imax must be positive");
}

void Lexicon::add_entry(WordEntry entry) {
    if (entry.word.empty()) throw DomainError("empty word");
    if (entry.id > i_max_)
        throw DomainError("id " + std::to_string(entry.id) + " exceeds imax " +
                          std::to_string(i_max_));
    if (word_index_.contains(entry.word))
        throw DomainError("duplicate word '" + entry.word + "'");
    if (auto it = id_index_.find(entry.id); it != id_index_.end())
        throw DomainError("duplicate id " + std::to_string(entry.id) +
                          " (already assigned to '" + entries_[it->second].word + "')");
    if (entry.synset.empty()) throw DomainError("empty synset for '" + entry.word + "'");

    std::sort(entry.synset.begin(), entry.synset.end());
    if (std::adjacent_find(entry.synset.begin(), entry.synset.end()) != entry.synset.end())
        throw DomainError("duplicate synset member for '" + entry.word + "'");
    if (entry.synset.back() > i_max_)
        throw DomainError("synset member " + std::to_string(entry.synset.back()) +
                          " of '" + entry.word + "' exceeds imax " + std::to_string(i_max_));
    if (!std::binary_search(entry.synset.begin(), entry.synset.end(), entry.id))
        throw DomainError("synset of '" + entry.word + "' does not contain its own id " +
                          std::to_string(entry.id));

    const auto index = static_cast<std::uint32_t>(entries_.size());
    word_index_.emplace(entry.word, index);
    id_index_.emplace(entry.id, index);
    entries_.push_back(std::move(entry));
}

Lexicon Lexicon::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open lexicon file '" + path.string() + "'");

    std::string line;
    if (!std::getline(in, line)) fail_line(path, 1, "missing header line");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.starts_with(kHeaderPrefix))
        fail_line(path, 1, "malformed header, expected '" + std::string(kHeaderPrefix) +
                               "<integer>'");
    std::uint32_t i_max = 0;
    if (!parse_u32(std::string_view(line).substr(kHeaderPrefix.size()), i_max) || i_max == 0)
        fail_line(path, 1, "malformed imax value");

    Lexicon lexicon(i_max);
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;

        const auto tab1 = line.find('\t');
        const auto tab2 = tab1 == std::string::npos ? std::string::npos
                                                    : line.find('\t', tab1 + 1);
        if (tab1 == std::string::npos || tab2 == std::string::npos ||
            line.find('\t', tab2 + 1) != std::string::npos)
            fail_line(path, line_no, "malformed line, expected 3 tab-separated fields");

        WordEntry entry;
        entry.word = line.substr(0, tab1);
        if (!parse_u32(std::string_view(line).substr(tab1 + 1, tab2 - tab1 - 1), entry.id))
            fail_line(path, line_no, "malformed id field");

        std::string_view members = std::string_view(line).substr(tab2 + 1);
        while (!members.empty()) {
            const auto comma = members.find(',');
            const auto field = members.substr(0, comma);
            std::uint32_t member = 0;
            if (!parse_u32(field, member))
                fail_line(path, line_no, "malformed synset member '" + std::string(field) + "'");
            entry.synset.push_back(member);
            if (comma == std::string_view::npos) break;
            members.remove_prefix(comma + 1);
        }

        try {
            lexicon.add_entry(std::move(entry));
        } catch (const DomainError& e) {
            fail_line(path, line_no, e.what());
        }
    }
    return lexicon;
}

void Lexicon::save(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("cannot write lexicon file '" + path.string() + "'");
    out << kHeaderPrefix << i_max_ << '\n';
    for (const auto& entry : entries_) {
        out << entry.word << '\t' << entry.id << '\t';
        for (std::size_t i = 0; i < entry.synset.size(); ++i) {
            if (i != 0) out << ',';
            out << entry.synset[i];
        }
        out << '\n';
    }
    if (!out) throw FormatError("write failed for '" + path.string() + "'");
}

const WordEntry* Lexicon::find(std::string_view word) const {
    const auto it = word_index_.find(std::string(word));
    return it == word_index_.end() ? nullptr : &entries_[it->second];
}

const WordEntry* Lexicon::by_id(WordId id) const {
    const auto it = id_index_.find(id);
    return it == id_index_.end() ? nullptr : &entries_[it->second];
}

WordId Lexicon::unknown_word_id(std::string_view word) const {
    if (i_max_ == 0) throw DomainError("lexicon has no imax");
    return static_cast<WordId>(i_max_ + 1 + fnv1a64(word) % i_max_);
}

std::vector<WordId> Lexicon::synset_of(std::string_view word) const {
    if (const WordEntry* entry = find(word)) return entry->synset;
    return {unknown_word_id(word)};
}

SynsetStats Lexicon::stats() const {
    if (entries_.empty()) throw DomainError("stats of an empty lexicon: mean undefined");
    SynsetStats stats;
    stats.total_words = entries_.size();
    std::uint64_t total_size = 0;
    for (const auto& entry : entries_) {
        ++stats.histogram[entry.synset.size()];
        total_size += entry.synset.size();
        stats.max_size = std::max(stats.max_size, entry.synset.size());
    }
    stats.mean_size = static_cast<double>(total_size) / static_cast<double>(stats.total_words);
    std::uint64_t best = 0;
    for (const auto& [size, count] : stats.histogram) {
        if (count > best) {
            best = count;
            stats.mode_size = size;
        }
    }
    return stats;
}

std::uint64_t Lexicon::unresolved_synset_members() const {
    std::uint64_t unresolved = 0;
    for (const auto& entry : entries_)
        for (WordId member : entry.synset)
            if (!id_index_.contains(member)) ++unresolved;
    return unresolved;
}

bool Lexicon::operator==(const Lexicon& other) const {
    return i_max_ == other.i_max_ && entries_ == other.entries_;
}

Lexicon generate_synthetic(const SyntheticConfig& config) {
    if (config.word_count < 1) throw DomainError("word_count must be at least 1");
    if (config.cluster_size < 1) throw DomainError("cluster_size must be at least 1");
    if (config.mean_synset < 1.0) throw DomainError("mean_synset must be at least 1");
    if (static_cast<std::uint64_t>(config.i_max) < 10 * static_cast<std::uint64_t>(config.word_count))
        throw DomainError("i_max must be at least 10 * word_count");

    detail::SplitMix64 rng(config.seed);
    const std::size_t count = config.word_count;

    // Distinct random ids; the id space is at least 10x the word count, so
    // rejection terminates quickly.
    std::vector<WordId> ids(count);
    std::unordered_map<WordId, bool> used;
    used.reserve(count * 2);
    for (std::size_t k = 0; k < count; ++k) {
        WordId id;
        do {
            id = static_cast<WordId>(
                detail::uniform_below(rng, static_cast<std::uint64_t>(config.i_max) + 1));
        } while (used.contains(id));
        used.emplace(id, true);
        ids[k] = id;
    }

    int width = 1;
    for (std::size_t v = count > 0 ? count - 1 : 0; v >= 10; v /= 10) ++width;
    if (width < 6) width = 6;

    const auto cap = static_cast<std::uint64_t>(20.0 * config.mean_synset);

    Lexicon lexicon(config.i_max);
    for (std::size_t k = 0; k < count; ++k) {
        const std::size_t cluster = k / config.cluster_size;
        const std::size_t cluster_lo = cluster * config.cluster_size;
        const std::size_t cluster_hi = std::min(cluster_lo + config.cluster_size, count);

        WordEntry entry;
        entry.id = ids[k];
        {
            std::string digits = std::to_string(k);
            entry.word = "w" + std::string(width - static_cast<int>(digits.size()), '0') + digits;
        }

        std::vector<WordId> synset;
        synset.push_back(entry.id);
        auto insert_unique = [&synset](WordId v) {
            if (std::find(synset.begin(), synset.end(), v) == synset.end()) {
                synset.push_back(v);
                return true;
            }
            return false;
        };

        // Two fixed anchors per multi-member cluster guarantee the shared-pair
        // property; the remaining member ids deepen intra-cluster overlap.
        if (cluster_hi - cluster_lo >= 2) {
            insert_unique(ids[cluster_lo]);
            insert_unique(ids[cluster_lo + 1]);
        }

        std::size_t target = static_cast<std::size_t>(
            detail::geometric_min1(rng, config.mean_synset, cap));
        target = std::max(target, synset.size());

        std::vector<WordId> pool;
        for (std::size_t m = cluster_lo; m < cluster_hi; ++m)
            if (m != k) pool.push_back(ids[m]);
        for (std::size_t i = pool.size(); i > 1; --i)
            std::swap(pool[i - 1], pool[detail::uniform_below(rng, i)]);
        for (WordId member : pool) {
            if (synset.size() >= target) break;
            insert_unique(member);
        }

        while (synset.size() < target) {
            const auto v = static_cast<WordId>(
                detail::uniform_below(rng, static_cast<std::uint64_t>(config.i_max) + 1));
            insert_unique(v);
        }

        entry.synset = std::move(synset);
        lexicon.add_entry(std::move(entry));
    }
    return lexicon;
}

} // namespace nsum
