#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "nsum/encrypt.hpp"
#include "nsum/error.hpp"
#include "nsum/match.hpp"
#include "oracles.hpp"
#include "support.hpp"

using nsum::DomainError;
using nsum::Lexicon;
using nsum::Message;
using nsum::SumSet;
using nsum::WordId;

namespace {

Message msg(std::vector<std::string> words) { return Message{std::move(words)}; }

/// Random lexicon for property tests; hand-built, no clustering.
Lexicon random_lexicon(testutil::TestRng& rng, std::size_t word_count,
                       WordId i_max) {
    Lexicon lexicon(i_max);
    std::set<WordId> used;
    for (std::size_t w = 0; w < word_count; ++w) {
        WordId id = 0;
        do {
            id = static_cast<WordId>(rng.below(i_max + 1));
        } while (!used.insert(id).second);

        std::set<WordId> synset{id};
        const std::size_t extra = rng.below(6);
        while (synset.size() < 1 + extra)
            synset.insert(static_cast<WordId>(rng.below(i_max + 1)));

        lexicon.add_entry({"w" + std::to_string(w), id,
                           {synset.begin(), synset.end()}});
    }
    return lexicon;
}

Message random_message(testutil::TestRng& rng, const Lexicon& lexicon,
                       std::size_t max_words, bool allow_unknown) {
    const std::size_t count = 1 + rng.below(std::min(max_words, lexicon.word_count()));
    std::vector<std::size_t> indices(lexicon.word_count());
    std::iota(indices.begin(), indices.end(), 0);
    Message message;
    for (std::size_t k = 0; k < count; ++k) {
        std::swap(indices[k], indices[k + rng.below(indices.size() - k)]);
        message.words.push_back(lexicon.at(indices[k]).word);
    }
    if (allow_unknown && rng.coin())
        message.words.push_back("zzz" + std::to_string(rng.below(1000)));
    return message;
}

} // namespace

TEST_SUITE("encrypt") {

TEST_CASE("tokenize lowercases, splits and deduplicates") {
    const Message tokens = nsum::tokenize("Dog, cat; DOG! cat-flap 2nd");
    CHECK(tokens.words ==
          std::vector<std::string>{"dog", "cat", "flap", "2nd"});

    CHECK(nsum::tokenize("").size() == 0);
    CHECK(nsum::tokenize(" \t\n;;; ").size() == 0);
    CHECK(nsum::tokenize("Na\xc3\xaf"
                         "ve fa\xc3\xa7"
                         "ade")
              .words == std::vector<std::string>{"na\xc3\xaf"
                                                 "ve",
                                                 "fa\xc3\xa7"
                                                 "ade"});
}

TEST_CASE("tokenize applies stopwords") {
    const nsum::StopwordSet stopwords{"the", "a"};
    const Message tokens = nsum::tokenize("The dog ate a bone", stopwords);
    CHECK(tokens.words == std::vector<std::string>{"dog", "ate", "bone"});
}

TEST_CASE("load_stopwords normalizes entries") {
    const auto dir = testutil::scratch_dir("unit");
    const auto path = dir / "stop.txt";
    testutil::write_text(path, "The\nA\n\nOF\n");
    const nsum::StopwordSet stopwords = nsum::load_stopwords(path);
    CHECK(stopwords == nsum::StopwordSet{"the", "a", "of"});
    CHECK_THROWS_AS(nsum::load_stopwords(dir / "nope.txt"), nsum::FormatError);
}

TEST_CASE("two-word sum set is the full cross sum") {
    const Lexicon lexicon = testutil::toy_lexicon();

    const SumSet plain = nsum::encrypt(lexicon, msg({"dog", "cat"}), 2, false);
    CHECK(plain.n == 2);
    CHECK_FALSE(plain.dedup);
    CHECK(plain.values ==
          std::vector<std::uint64_t>{4, 13, 13, 15, 17, 22, 24, 26, 28});

    const SumSet dedup = nsum::encrypt(lexicon, msg({"dog", "cat"}), 2, true);
    CHECK(dedup.dedup);
    CHECK(dedup.values ==
          std::vector<std::uint64_t>{4, 13, 15, 17, 22, 24, 26, 28});
}

TEST_CASE("three-word sum set sums over all word pairs") {
    const Lexicon lexicon = testutil::toy_lexicon();
    const SumSet sumset =
        nsum::encrypt(lexicon, msg({"dog", "cat", "rock"}), 2, false);
    CHECK(sumset.values ==
          std::vector<std::uint64_t>{4,  4,  4,  13, 13, 13, 13, 15, 15,
                                     17, 17, 22, 24, 26, 28, 35, 35, 44,
                                     44, 46, 48, 54, 54, 63, 63, 65, 67});
}

TEST_CASE("arity one and arity N edge cases") {
    const Lexicon lexicon = testutil::toy_lexicon();
    CHECK(nsum::encrypt(lexicon, msg({"dog"}), 1, false).values ==
          std::vector<std::uint64_t>{2, 11, 13});

    const SumSet full = nsum::encrypt(lexicon, msg({"dog", "cat", "rock"}), 3, false);
    CHECK(full.size() == 27); // 3*3*3 sums from a single word triple
    CHECK(full.values.front() == 2 + 2 + 2);
    CHECK(full.values.back() == 13 + 15 + 52);
}

TEST_CASE("domain errors") {
    const Lexicon lexicon = testutil::toy_lexicon();
    CHECK_THROWS_AS(nsum::encrypt(lexicon, msg({}), 2, false), DomainError);
    CHECK_THROWS_AS(nsum::encrypt(lexicon, msg({"dog"}), 0, false), DomainError);
    CHECK_THROWS_WITH_AS(nsum::encrypt(lexicon, msg({"dog", "cat"}), 5, false),
                         "n exceeds message length (n=5, N=2)", DomainError);
}

TEST_CASE("unknown words contribute their hashed singleton") {
    const Lexicon lexicon = testutil::toy_lexicon();
    const WordId hashed = lexicon.unknown_word_id("zzz");
    const SumSet sumset = nsum::encrypt(lexicon, msg({"dog", "zzz"}), 2, false);

    std::vector<std::uint64_t> expected{2 + hashed, 11 + hashed, 13 + hashed};
    std::sort(expected.begin(), expected.end());
    CHECK(sumset.values == expected);
}

TEST_CASE("repeated message words collapse") {
    const Lexicon lexicon = testutil::toy_lexicon();
    CHECK(nsum::encrypt(lexicon, msg({"dog", "dog", "cat"}), 2, false) ==
          nsum::encrypt(lexicon, msg({"dog", "cat"}), 2, false));
}

TEST_CASE("matches the enumeration oracle on random instances") {
    testutil::TestRng rng(777);
    for (int trial = 0; trial < 60; ++trial) {
        const Lexicon lexicon =
            random_lexicon(rng, 2 + rng.below(30), 500 + static_cast<WordId>(rng.below(5000)));
        const Message message = random_message(rng, lexicon, 6, true);
        const auto n = static_cast<std::uint32_t>(1 + rng.below(std::min<std::size_t>(3, message.size())));
        const bool dedup = rng.coin();

        const SumSet sumset = nsum::encrypt(lexicon, message, n, dedup);
        CHECK(sumset.values == oracle::sum_set(lexicon, message.words, n, dedup));
    }
}

TEST_CASE("cardinality, permutation and containment properties") {
    testutil::TestRng rng(4242);
    for (int trial = 0; trial < 30; ++trial) {
        const Lexicon lexicon = random_lexicon(rng, 3 + rng.below(20), 10'000);
        Message message = random_message(rng, lexicon, 5, false);
        const auto n = static_cast<std::uint32_t>(
            1 + rng.below(std::min<std::size_t>(3, message.size())));

        const SumSet sumset = nsum::encrypt(lexicon, message, n, false);

        // cardinality: sum over n-subsets of synset size products
        std::vector<bool> selector(message.size(), false);
        std::fill(selector.begin(), selector.begin() + n, true);
        std::sort(selector.begin(), selector.end());
        std::uint64_t expected = 0;
        do {
            std::uint64_t product = 1;
            for (std::size_t w = 0; w < message.size(); ++w)
                if (selector[w]) product *= lexicon.synset_of(message.words[w]).size();
            expected += product;
        } while (std::next_permutation(selector.begin(), selector.end()));
        CHECK(sumset.size() == expected);

        // permutation invariance
        Message shuffled = message;
        for (std::size_t k = 0; k + 1 < shuffled.words.size(); ++k)
            std::swap(shuffled.words[k],
                      shuffled.words[k + rng.below(shuffled.words.size() - k)]);
        CHECK(nsum::encrypt(lexicon, shuffled, n, false) == sumset);

        // monotone containment under message growth
        Message grown = message;
        for (std::size_t w = 0; w < lexicon.word_count(); ++w) {
            const std::string& candidate = lexicon.at(w).word;
            if (std::find(grown.words.begin(), grown.words.end(), candidate) ==
                grown.words.end()) {
                grown.words.push_back(candidate);
                break;
            }
        }
        if (grown.size() > message.size()) {
            const SumSet larger = nsum::encrypt(lexicon, grown, n, false);
            CHECK(nsum::match_count(sumset.values, larger) == sumset.size());
        }

        // range bound: every id is at most 2 * i_max
        CHECK(sumset.values.back() <=
              std::uint64_t{2} * lexicon.i_max() * n);
    }
}

TEST_CASE("dedup drops exactly the duplicate sums") {
    testutil::TestRng rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        const Lexicon lexicon = random_lexicon(rng, 2 + rng.below(10), 200);
        const Message message = random_message(rng, lexicon, 4, false);
        const auto n = static_cast<std::uint32_t>(
            1 + rng.below(std::min<std::size_t>(2, message.size())));

        const SumSet plain = nsum::encrypt(lexicon, message, n, false);
        const SumSet dedup = nsum::encrypt(lexicon, message, n, true);

        std::vector<std::uint64_t> expected = plain.values;
        expected.erase(std::unique(expected.begin(), expected.end()), expected.end());
        CHECK(dedup.values == expected);
    }
}

TEST_CASE("saturation bound formula") {
    CHECK(nsum::saturation_bound(2, 20'000'000, 10.0) == doctest::Approx(894.427).epsilon(0.001));
    CHECK(nsum::saturation_bound(2, 20'000'000, 10.0) > 894.0);
    CHECK(nsum::saturation_bound(2, 20'000'000, 10.0) < 895.0);
    CHECK(nsum::saturation_bound(1, 100, 1.0) == doctest::Approx(200.0));
    CHECK(nsum::saturation_bound(4, 20'000'000, 10.0) ==
          doctest::Approx(11.247).epsilon(0.001));

    CHECK_THROWS_AS(nsum::saturation_bound(0, 100, 1.0), DomainError);
    CHECK_THROWS_AS(nsum::saturation_bound(2, 0, 1.0), DomainError);
    CHECK_THROWS_AS(nsum::saturation_bound(2, 100, 0.0), DomainError);
}

TEST_CASE("size estimate formula") {
    const nsum::SizeEstimate twenty = nsum::estimate_size(2, 20, 10.0);
    CHECK(twenty.integer_count == 20'000);
    CHECK(twenty.byte_estimate == 20'000);

    const nsum::SizeEstimate one = nsum::estimate_size(1, 1, 1.0);
    CHECK(one.integer_count == 1);
    CHECK(one.byte_estimate == 1);

    CHECK(nsum::estimate_size(3, 30, 10.0).integer_count == 9'000'000);

    CHECK_THROWS_AS(nsum::estimate_size(0, 10, 1.0), DomainError);
    CHECK_THROWS_AS(nsum::estimate_size(3, 2, 1.0), DomainError);
}

} // TEST_SUITE
