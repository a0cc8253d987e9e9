#include <algorithm>
#include <set>

#include "doctest.h"
#include "nsum/error.hpp"
#include "nsum/lexicon.hpp"
#include "support.hpp"

using nsum::DomainError;
using nsum::FormatError;
using nsum::Lexicon;
using nsum::WordEntry;
using nsum::WordId;

TEST_SUITE("lexicon") {

TEST_CASE("entries are indexed by word and id") {
    const Lexicon lexicon = testutil::toy_lexicon();
    CHECK(lexicon.word_count() == 3);
    CHECK(lexicon.i_max() == 100);

    const WordEntry* dog = lexicon.find("dog");
    REQUIRE(dog != nullptr);
    CHECK(dog->id == 11);
    CHECK(dog->synset == std::vector<WordId>{2, 11, 13});

    CHECK(lexicon.by_id(15)->word == "cat");
    CHECK(lexicon.by_id(99) == nullptr);
    CHECK(lexicon.find("mouse") == nullptr);
    CHECK(lexicon.at(2).word == "rock");
}

TEST_CASE("add_entry sorts the synset") {
    Lexicon lexicon(100);
    lexicon.add_entry({"dog", 11, {13, 2, 11}});
    CHECK(lexicon.find("dog")->synset == std::vector<WordId>{2, 11, 13});
}

TEST_CASE("add_entry rejects invariant violations") {
    Lexicon lexicon(100);
    lexicon.add_entry({"dog", 11, {2, 11, 13}});

    CHECK_THROWS_AS(lexicon.add_entry({"", 20, {20}}), DomainError);
    CHECK_THROWS_AS(lexicon.add_entry({"big", 101, {101}}), DomainError);
    CHECK_THROWS_AS(lexicon.add_entry({"dog", 12, {12}}), DomainError);
    CHECK_THROWS_AS(lexicon.add_entry({"hound", 11, {11}}), DomainError);
    CHECK_THROWS_AS(lexicon.add_entry({"empty", 13, {}}), DomainError);
    CHECK_THROWS_AS(lexicon.add_entry({"dup", 14, {11, 14, 14}}), DomainError);
    CHECK_THROWS_AS(lexicon.add_entry({"high", 16, {16, 101}}), DomainError);
    CHECK_THROWS_AS(lexicon.add_entry({"noself", 17, {2, 11}}), DomainError);

    CHECK(lexicon.word_count() == 1);
    CHECK_THROWS_AS(Lexicon(0), DomainError);
}

TEST_CASE("save and load round-trip") {
    const auto dir = testutil::scratch_dir("unit");
    const auto path = dir / "toy.tsv";

    const Lexicon original = testutil::toy_lexicon();
    original.save(path);
    CHECK(Lexicon::load(path) == original);

    nsum::SyntheticConfig config;
    config.word_count = 200;
    config.i_max = 5000;
    config.seed = 9;
    const Lexicon synthetic = nsum::generate_synthetic(config);
    synthetic.save(path);
    CHECK(Lexicon::load(path) == synthetic);
}

TEST_CASE("load accepts comments, blank lines and CRLF") {
    const auto dir = testutil::scratch_dir("unit");
    const auto path = dir / "relaxed.tsv";
    testutil::write_text(path,
                         "#nsum-lexicon v1 imax=100\r\n"
                         "\n"
                         "# a comment\n"
                         "dog\t11\t2,11,13\r\n"
                         "cat\t15\t2,11,15\n");
    const Lexicon lexicon = Lexicon::load(path);
    CHECK(lexicon.word_count() == 2);
    CHECK(lexicon.find("dog")->synset == std::vector<WordId>{2, 11, 13});
}

TEST_CASE("load reports the offending line") {
    const auto dir = testutil::scratch_dir("unit");
    const auto path = dir / "bad.tsv";
    const std::string header = "#nsum-lexicon v1 imax=100\n";

    testutil::write_text(path, "dog\t11\t11\n");
    CHECK_THROWS_WITH_AS(Lexicon::load(path),
                         doctest::Contains(":1: malformed header"), FormatError);

    testutil::write_text(path, "");
    CHECK_THROWS_WITH_AS(Lexicon::load(path),
                         doctest::Contains(":1: missing header"), FormatError);

    testutil::write_text(path, "#nsum-lexicon v1 imax=zero\ndog\t11\t11\n");
    CHECK_THROWS_WITH_AS(Lexicon::load(path), doctest::Contains(":1:"), FormatError);

    testutil::write_text(path, header + "dog 11 11\n");
    CHECK_THROWS_WITH_AS(Lexicon::load(path), doctest::Contains(":2:"), FormatError);

    testutil::write_text(path, header + "dog\t11\t11\ncat\txv\t15\n");
    CHECK_THROWS_WITH_AS(Lexicon::load(path), doctest::Contains(":3:"), FormatError);

    testutil::write_text(path, header + "dog\t11\t11\tmore\n");
    CHECK_THROWS_WITH_AS(Lexicon::load(path), doctest::Contains(":2:"), FormatError);

    testutil::write_text(path, header + "cat\t15\t2,11\n");
    CHECK_THROWS_WITH_AS(Lexicon::load(path),
                         doctest::Contains("does not contain its own id"),
                         FormatError);

    testutil::write_text(path, header + "dog\t11\t11\ndog\t12\t12\n");
    CHECK_THROWS_WITH_AS(Lexicon::load(path), doctest::Contains(":3:"), FormatError);

    CHECK_THROWS_AS(Lexicon::load(dir / "missing.tsv"), FormatError);
}

TEST_CASE("empty body is a valid lexicon without stats") {
    const auto dir = testutil::scratch_dir("unit");
    const auto path = dir / "empty.tsv";
    testutil::write_text(path, "#nsum-lexicon v1 imax=50\n");
    const Lexicon lexicon = Lexicon::load(path);
    CHECK(lexicon.word_count() == 0);
    CHECK(lexicon.i_max() == 50);
    CHECK_THROWS_AS(lexicon.stats(), DomainError);
}

TEST_CASE("unknown words hash above i_max deterministically") {
    const Lexicon lexicon = testutil::toy_lexicon();
    for (const char* word : {"mouse", "carrot", "zebra", "x"}) {
        const WordId id = lexicon.unknown_word_id(word);
        CHECK(id > lexicon.i_max());
        CHECK(id <= 2 * lexicon.i_max());
        CHECK(lexicon.unknown_word_id(word) == id);
        CHECK(lexicon.synset_of(word) == std::vector<WordId>{id});
    }
    CHECK(lexicon.unknown_word_id("mouse") != lexicon.unknown_word_id("mousse"));
}

TEST_CASE("stats summarize synset sizes") {
    const Lexicon lexicon = testutil::toy_lexicon();
    const nsum::SynsetStats stats = lexicon.stats();
    CHECK(stats.total_words == 3);
    CHECK(stats.mean_size == doctest::Approx(3.0));
    CHECK(stats.max_size == 3);
    CHECK(stats.mode_size == 3);
    REQUIRE(stats.histogram.size() == 1);
    CHECK(stats.histogram.at(3) == 3);

    CHECK(lexicon.unresolved_synset_members() == 5);
}

TEST_CASE("mode ties resolve to the smallest size") {
    Lexicon lexicon(100);
    lexicon.add_entry({"a", 1, {1}});
    lexicon.add_entry({"b", 2, {1, 2}});
    CHECK(lexicon.stats().mode_size == 1);
}

TEST_CASE("synthetic generation is deterministic and well-formed") {
    nsum::SyntheticConfig config;
    config.word_count = 250;
    config.i_max = 10'000;
    config.mean_synset = 10.0;
    config.cluster_size = 5;
    config.seed = 3;

    const Lexicon a = nsum::generate_synthetic(config);
    const Lexicon b = nsum::generate_synthetic(config);
    CHECK(a == b);

    config.seed = 4;
    CHECK_FALSE(a == nsum::generate_synthetic(config));

    CHECK(a.word_count() == 250);
    CHECK(a.i_max() == 10'000);
    std::set<WordId> ids;
    for (std::size_t w = 0; w < a.word_count(); ++w) {
        const nsum::WordEntry& entry = a.at(w);
        CHECK(entry.id <= a.i_max());
        CHECK(ids.insert(entry.id).second);
        CHECK(std::is_sorted(entry.synset.begin(), entry.synset.end()));
        CHECK(std::binary_search(entry.synset.begin(), entry.synset.end(), entry.id));
    }
    const double mean = a.stats().mean_size;
    CHECK(mean > 5.0);
    CHECK(mean < 20.0);
}

TEST_CASE("synthetic clusters share synset ids") {
    nsum::SyntheticConfig config;
    config.word_count = 100;
    config.i_max = 2'000;
    config.cluster_size = 5;
    config.seed = 12;
    const Lexicon lexicon = nsum::generate_synthetic(config);

    for (std::size_t cluster = 0; cluster < 4; ++cluster) {
        std::vector<WordId> shared = lexicon.at(cluster * 5).synset;
        for (std::size_t k = 1; k < 5; ++k) {
            const auto& synset = lexicon.at(cluster * 5 + k).synset;
            std::vector<WordId> next;
            std::set_intersection(shared.begin(), shared.end(), synset.begin(),
                                  synset.end(), std::back_inserter(next));
            shared = std::move(next);
        }
        CHECK(shared.size() >= 2);
    }
}

TEST_CASE("synthetic configuration is validated") {
    nsum::SyntheticConfig config;
    config.word_count = 0;
    CHECK_THROWS_AS(nsum::generate_synthetic(config), DomainError);

    config.word_count = 100;
    config.i_max = 500; // below 10 * word_count
    CHECK_THROWS_AS(nsum::generate_synthetic(config), DomainError);

    config.i_max = 2'000;
    config.mean_synset = 0.5;
    CHECK_THROWS_AS(nsum::generate_synthetic(config), DomainError);

    config.mean_synset = 10.0;
    config.cluster_size = 0;
    CHECK_THROWS_AS(nsum::generate_synthetic(config), DomainError);
}

} // TEST_SUITE
