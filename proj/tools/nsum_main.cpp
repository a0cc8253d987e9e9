#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "nsum/nsum.hpp"

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

std::string fixed(double v, int digits = 6) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

std::string read_text_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw nsum::Error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::uint8_t> read_blob(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw nsum::Error("cannot open " + path.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void emit_json(const ordered_json& object) { std::cout << object.dump(2) << '\n'; }

struct Common {
    unsigned threads = 0; // 0 = all cores
    bool json = false;
    std::uint64_t seed = 0;
};

void add_common(CLI::App* cmd, Common& common) {
    cmd->add_option("--threads", common.threads, "worker threads (0 = all cores)");
    cmd->add_flag("--json", common.json, "print a single JSON object instead of text");
    cmd->add_option("--seed", common.seed, "seed for randomized operations");
}

// ---------------------------------------------------------------- stats

struct StatsOpts {
    std::string lexicon;
    std::string hist_csv;
    Common common;
};

int run_stats(const StatsOpts& opts) {
    const nsum::Lexicon lexicon = nsum::Lexicon::load(opts.lexicon);
    const nsum::SynsetStats stats = lexicon.stats();
    const std::uint64_t unresolved = lexicon.unresolved_synset_members();

    if (!opts.hist_csv.empty()) {
        std::ofstream out(opts.hist_csv, std::ios::binary);
        if (!out) throw nsum::Error("cannot write " + opts.hist_csv);
        out << "size,count\n";
        for (const auto& [size, count] : stats.histogram)
            out << size << ',' << count << '\n';
    }

    if (opts.common.json) {
        ordered_json object;
        object["schema_version"] = 1;
        object["words"] = stats.total_words;
        object["i_max"] = lexicon.i_max();
        object["mean_synset_size"] = stats.mean_size;
        object["mode_synset_size"] = stats.mode_size;
        object["max_synset_size"] = stats.max_size;
        object["unresolved_synset_members"] = unresolved;
        emit_json(object);
    } else {
        std::cout << "words: " << stats.total_words << '\n'
                  << "i_max: " << lexicon.i_max() << '\n'
                  << "mean synset size: " << fixed(stats.mean_size) << '\n'
                  << "mode synset size: " << stats.mode_size << '\n'
                  << "max synset size: " << stats.max_size << '\n'
                  << "unresolved synset members: " << unresolved << '\n';
    }
    return 0;
}

// -------------------------------------------------------------- encrypt

struct EncryptOpts {
    std::string lexicon;
    std::uint32_t n = 2;
    bool dedup = false;
    std::string stopwords;
    std::string in_file;
    std::string text;
    bool text_given = false;
    std::string out;
    Common common;
};

int run_encrypt(const EncryptOpts& opts) {
    std::string text;
    if (opts.text_given) {
        text = opts.text;
    } else if (!opts.in_file.empty()) {
        text = read_text_file(opts.in_file);
    } else {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        text = ss.str();
    }

    nsum::Message message;
    if (opts.stopwords.empty()) {
        message = nsum::tokenize(text);
    } else {
        message = nsum::tokenize(text, nsum::load_stopwords(opts.stopwords));
    }

    // Checked before the lexicon loads so a bad arity is reported even
    // without one.
    if (opts.n > message.size())
        throw nsum::DomainError("n exceeds message length (n=" +
                                std::to_string(opts.n) +
                                ", N=" + std::to_string(message.size()) + ")");

    if (opts.lexicon.empty()) {
        std::cerr << "encrypt: --lexicon is required\n"
                     "Run with --help for more information.\n";
        return 1;
    }
    const nsum::Lexicon lexicon = nsum::Lexicon::load(opts.lexicon);
    const nsum::SumSet sumset = nsum::encrypt(lexicon, message, opts.n, opts.dedup);

    // Unknown words carry singleton synsets, so an empty dictionary still
    // has a well-defined mean of 1.
    const double mean_synset =
        lexicon.word_count() > 0 ? lexicon.stats().mean_size : 1.0;
    const double bound = nsum::saturation_bound(opts.n, lexicon.i_max(), mean_synset);
    if (static_cast<double>(message.size()) > 0.1 * bound)
        std::cerr << "warning: message length " << message.size()
                  << " exceeds 10% of the saturation bound " << fixed(bound, 1)
                  << "; matching quality degrades\n";

    std::uintmax_t bytes = 0;
    if (!opts.out.empty()) {
        nsum::codec::write_file(opts.out, sumset);
        bytes = fs::file_size(opts.out);
    }

    if (opts.common.json) {
        ordered_json object;
        object["schema_version"] = 1;
        object["words"] = message.size();
        object["sums"] = sumset.size();
        object["saturation_bound"] = bound;
        object["n"] = opts.n;
        object["dedup"] = opts.dedup;
        if (opts.out.empty()) {
            object["out"] = nullptr;
        } else {
            object["out"] = opts.out;
            object["bytes"] = bytes;
        }
        emit_json(object);
    } else {
        std::cout << "words: " << message.size() << '\n'
                  << "sums: " << sumset.size() << '\n'
                  << "saturation bound: " << fixed(bound, 1) << '\n';
        if (!opts.out.empty())
            std::cout << "wrote " << opts.out << " (" << bytes << " bytes)\n";
    }
    return 0;
}

// -------------------------------------------------------------- compare

struct CompareOpts {
    std::string probe;
    std::string target;
    Common common;
};

int run_compare(const CompareOpts& opts) {
    const nsum::SumSet probe = nsum::codec::read_file(opts.probe);
    const nsum::SumSet target = nsum::codec::read_file(opts.target);
    const nsum::MatchReport report = nsum::total_match(probe, target);

    if (opts.common.json) {
        ordered_json object;
        object["schema_version"] = 1;
        object["xi"] = report.xi;
        object["matched_count"] = report.matched_count;
        object["probe_size"] = report.probe_size;
        emit_json(object);
    } else {
        std::cout << "xi: " << fixed(report.xi) << '\n'
                  << "matched: " << report.matched_count << '\n'
                  << "probe size: " << report.probe_size << '\n';
    }
    return 0;
}

// ----------------------------------------------------------- pair-match

struct PairMatchOpts {
    std::string lexicon;
    std::string word_x;
    std::string word_y;
    std::string target;
    Common common;
};

std::string single_token(const std::string& raw) {
    const nsum::Message tokens = nsum::tokenize(raw);
    if (tokens.size() != 1)
        throw nsum::DomainError("not a single word: '" + raw + "'");
    return tokens.words.front();
}

int run_pair_match(const PairMatchOpts& opts) {
    const nsum::Lexicon lexicon = nsum::Lexicon::load(opts.lexicon);
    const nsum::SumSet target = nsum::codec::read_file(opts.target);
    const nsum::PairProbe probe =
        nsum::pair_probe(lexicon, single_token(opts.word_x), single_token(opts.word_y));
    const double zeta = nsum::word_pair_match(probe, target);

    if (opts.common.json) {
        ordered_json object;
        object["schema_version"] = 1;
        object["word_x"] = probe.word_x;
        object["word_y"] = probe.word_y;
        object["zeta"] = zeta;
        object["probe_size"] = probe.values.size();
        emit_json(object);
    } else {
        std::cout << "zeta: " << fixed(zeta) << '\n'
                  << "probe size: " << probe.values.size() << '\n';
    }
    return 0;
}

// --------------------------------------------------------------- attack

struct AttackOpts {
    std::string lexicon;
    std::string target;
    double threshold = 1.0;
    std::string known;
    std::uint64_t bench = 0;
    bool bench_given = false;
    std::string resume;
    Common common;
};

ordered_json found_to_json(const std::vector<nsum::FoundPair>& found) {
    ordered_json array = ordered_json::array();
    for (const nsum::FoundPair& pair : found) {
        ordered_json row;
        row["word_x"] = pair.word_x;
        row["word_y"] = pair.word_y;
        row["zeta"] = pair.zeta;
        array.push_back(std::move(row));
    }
    return array;
}

void write_attack_state(const fs::path& path, std::size_t lexicon_words,
                        std::uint64_t target_count, double threshold,
                        std::uint64_t next_pair, std::uint64_t pairs_tested,
                        const std::vector<nsum::FoundPair>& prior,
                        const std::vector<nsum::FoundPair>& current) {
    ordered_json state;
    state["schema_version"] = 1;
    state["lexicon_words"] = lexicon_words;
    state["target_count"] = target_count;
    state["threshold"] = threshold;
    state["next_pair"] = next_pair;
    state["pairs_tested"] = pairs_tested;
    ordered_json array = found_to_json(prior);
    for (auto& row : found_to_json(current)) array.push_back(std::move(row));
    state["found"] = std::move(array);

    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw nsum::Error("cannot write " + tmp.string());
        out << state.dump(2) << '\n';
    }
    fs::rename(tmp, path);
}

void print_found(const std::vector<nsum::FoundPair>& found) {
    std::cout << "found " << found.size() << " pair(s)\n";
    for (const nsum::FoundPair& pair : found)
        std::cout << "  " << pair.word_x << ' ' << pair.word_y
                  << " zeta=" << fixed(pair.zeta) << '\n';
}

int run_attack(const AttackOpts& opts) {
    const nsum::Lexicon lexicon = nsum::Lexicon::load(opts.lexicon);
    const nsum::SumSet target = nsum::codec::read_file(opts.target);

    if (opts.bench_given) {
        const nsum::BenchReport report =
            nsum::benchmark_attack(lexicon, target, opts.bench, opts.common.seed);
        if (opts.common.json) {
            ordered_json object;
            object["schema_version"] = 1;
            object["mode"] = "bench";
            object["sample_pairs"] = report.sample_pairs;
            object["elapsed_seconds"] = report.elapsed_seconds;
            object["pairs_per_second"] = report.pairs_per_second;
            object["lexicon_pairs"] = report.lexicon_pairs;
            object["full_search_seconds"] = report.full_search_seconds;
            emit_json(object);
        } else {
            std::cout << "sample pairs: " << report.sample_pairs << '\n'
                      << "elapsed: " << fixed(report.elapsed_seconds) << " s\n"
                      << "rate: " << fixed(report.pairs_per_second, 1)
                      << " pairs/s\n"
                      << "lexicon pairs: " << report.lexicon_pairs << '\n'
                      << "full search estimate: "
                      << fixed(report.full_search_seconds, 1) << " s ("
                      << fixed(report.full_search_seconds / 86400.0, 2)
                      << " days)\n";
        }
        return 0;
    }

    if (!opts.known.empty()) {
        const nsum::CrackResult result =
            nsum::extend_crack(lexicon, target, single_token(opts.known),
                               opts.threshold, opts.common.threads);
        if (opts.common.json) {
            ordered_json object;
            object["schema_version"] = 1;
            object["mode"] = "extend";
            object["known"] = opts.known;
            object["threshold"] = opts.threshold;
            object["found"] = found_to_json(result.found_pairs);
            object["pairs_tested"] = result.pairs_tested;
            object["elapsed_seconds"] = result.elapsed.count();
            object["pairs_per_second"] = result.pairs_per_second;
            emit_json(object);
        } else {
            print_found(result.found_pairs);
            std::cout << "pairs tested: " << result.pairs_tested << '\n'
                      << "elapsed: " << fixed(result.elapsed.count()) << " s\n"
                      << "rate: " << fixed(result.pairs_per_second, 1)
                      << " pairs/s\n";
        }
        return 0;
    }

    std::vector<nsum::FoundPair> prior;
    std::uint64_t prior_tested = 0;
    nsum::CrackOptions options;
    options.threads = opts.common.threads;

    if (!opts.resume.empty() && fs::exists(opts.resume)) {
        ordered_json state;
        try {
            std::ifstream in(opts.resume, std::ios::binary);
            state = ordered_json::parse(in);
        } catch (const std::exception& e) {
            throw nsum::FormatError(opts.resume + ": " + e.what());
        }
        if (state.value("schema_version", 0) != 1 ||
            state.value("lexicon_words", std::uint64_t{0}) != lexicon.word_count() ||
            state.value("target_count", std::uint64_t{0}) != target.values.size() ||
            state.value("threshold", -1.0) != opts.threshold)
            throw nsum::FormatError(opts.resume +
                                    ": state does not match this lexicon, "
                                    "target and threshold");
        options.start_pair = state.at("next_pair").get<std::uint64_t>();
        prior_tested = state.at("pairs_tested").get<std::uint64_t>();
        for (const auto& row : state.at("found"))
            prior.push_back({row.at("word_x").get<std::string>(),
                             row.at("word_y").get<std::string>(),
                             row.at("zeta").get<double>()});
    }
    if (!opts.resume.empty()) {
        options.on_checkpoint = [&](const nsum::CrackProgress& progress) {
            write_attack_state(opts.resume, lexicon.word_count(),
                               target.values.size(), opts.threshold,
                               progress.next_pair, prior_tested + progress.pairs_tested,
                               prior, *progress.found);
        };
    }

    const nsum::CrackResult result = nsum::crack_s2(lexicon, target, opts.threshold, options);

    std::vector<nsum::FoundPair> found = prior;
    found.insert(found.end(), result.found_pairs.begin(), result.found_pairs.end());
    const std::uint64_t tested = prior_tested + result.pairs_tested;
    const std::uint64_t total = nsum::pair_count(lexicon.word_count());

    if (opts.common.json) {
        ordered_json object;
        object["schema_version"] = 1;
        object["mode"] = "full";
        object["threshold"] = opts.threshold;
        object["found"] = found_to_json(found);
        object["pairs_tested"] = tested;
        object["total_pairs"] = total;
        object["elapsed_seconds"] = result.elapsed.count();
        object["pairs_per_second"] = result.pairs_per_second;
        emit_json(object);
    } else {
        print_found(found);
        std::cout << "pairs tested: " << tested << " of " << total << '\n'
                  << "elapsed: " << fixed(result.elapsed.count()) << " s\n"
                  << "rate: " << fixed(result.pairs_per_second, 1) << " pairs/s\n";
    }
    return 0;
}

// ----------------------------------------------------------- experiment

struct ExperimentOpts {
    std::string lexicon;
    std::string mode;
    std::uint64_t pairs = 1000;
    std::size_t words = 20;
    std::uint32_t n = 2;
    std::string csv;
    Common common;
};

int run_experiment(const ExperimentOpts& opts) {
    const nsum::Lexicon lexicon = nsum::Lexicon::load(opts.lexicon);

    nsum::ExperimentConfig config;
    config.pair_count = opts.pairs;
    config.words_per_message = opts.words;
    config.mode = opts.mode == "related" ? nsum::ExperimentConfig::Mode::related
                                         : nsum::ExperimentConfig::Mode::random;
    config.n = opts.n;
    config.seed = opts.common.seed;
    config.threads = opts.common.threads;

    const nsum::OverlapHistogram hist = nsum::run_overlap(lexicon, config);

    {
        std::ofstream out(opts.csv, std::ios::binary);
        if (!out) throw nsum::Error("cannot write " + opts.csv);
        nsum::write_histogram_csv(out, hist);
    }

    if (opts.common.json) {
        ordered_json object;
        object["schema_version"] = 1;
        object["mode"] = opts.mode;
        object["pairs"] = hist.pair_count;
        object["words_per_message"] = opts.words;
        object["n"] = opts.n;
        object["seed"] = opts.common.seed;
        object["bin_width_percent"] = hist.bin_width_percent;
        object["mean_percent"] = hist.mean_percent;
        object["mode_percent"] = hist.mode_percent;
        object["skipped_synset_members"] = hist.skipped_synset_members;
        object["csv"] = opts.csv;
        emit_json(object);
    } else {
        std::cout << "pairs: " << hist.pair_count << '\n'
                  << "mean overlap: " << fixed(hist.mean_percent) << "%\n"
                  << "mode overlap: " << fixed(hist.mode_percent) << "%\n"
                  << "skipped synset members: " << hist.skipped_synset_members
                  << '\n'
                  << "wrote " << opts.csv << '\n';
    }
    return 0;
}

// ---------------------------------------------------------- encode-info

struct EncodeInfoOpts {
    std::string blob;
    Common common;
};

int run_encode_info(const EncodeInfoOpts& opts) {
    const std::vector<std::uint8_t> bytes = read_blob(opts.blob);
    const nsum::codec::BlobInfo info = nsum::codec::inspect(bytes);
    const double bits_per_delta =
        info.count >= 2
            ? static_cast<double>(info.payload_bits) / static_cast<double>(info.count - 1)
            : 0.0;

    if (opts.common.json) {
        ordered_json object;
        object["schema_version"] = 1;
        object["version"] = info.version;
        object["n"] = info.n;
        object["dedup"] = info.dedup;
        object["count"] = info.count;
        object["base"] = info.base;
        object["payload_bits"] = info.payload_bits;
        object["byte_size"] = info.byte_size;
        object["bits_per_delta"] = bits_per_delta;
        emit_json(object);
    } else {
        std::cout << "version: " << static_cast<int>(info.version) << '\n'
                  << "arity: " << info.n << '\n'
                  << "dedup: " << (info.dedup ? "true" : "false") << '\n'
                  << "count: " << info.count << '\n'
                  << "base: " << info.base << '\n'
                  << "payload bits: " << info.payload_bits << '\n'
                  << "byte size: " << info.byte_size << '\n'
                  << "bits per delta: " << fixed(bits_per_delta) << '\n';
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"n-sum text encryption toolkit"};
    app.require_subcommand(1);

    StatsOpts stats_opts;
    CLI::App* stats_cmd =
        app.add_subcommand("stats", "synset size distribution of a lexicon");
    stats_cmd->add_option("--lexicon", stats_opts.lexicon, "lexicon TSV path")->required();
    stats_cmd->add_option("--hist-csv", stats_opts.hist_csv,
                          "write a size,count histogram CSV here");
    add_common(stats_cmd, stats_opts.common);

    EncryptOpts encrypt_opts;
    CLI::App* encrypt_cmd =
        app.add_subcommand("encrypt", "encrypt a message into a sum-set blob");
    encrypt_cmd->add_option("--lexicon", encrypt_opts.lexicon, "lexicon TSV path");
    encrypt_cmd->add_option("-n,--arity", encrypt_opts.n, "summands per value")
        ->default_val(2);
    encrypt_cmd->add_flag("--dedup", encrypt_opts.dedup, "drop duplicate sums");
    encrypt_cmd->add_option("--stopwords", encrypt_opts.stopwords,
                            "stopword list, one word per line");
    CLI::Option* in_opt = encrypt_cmd->add_option("--in", encrypt_opts.in_file,
                                                  "read the message from this file");
    encrypt_cmd->add_option("--text", encrypt_opts.text, "message text")
        ->excludes(in_opt)
        ->trigger_on_parse()
        ->each([&](const std::string&) { encrypt_opts.text_given = true; });
    encrypt_cmd->add_option("--out", encrypt_opts.out, "write the encoded blob here");
    add_common(encrypt_cmd, encrypt_opts.common);

    CompareOpts compare_opts;
    CLI::App* compare_cmd =
        app.add_subcommand("compare", "total matching of two encrypted blobs");
    compare_cmd->add_option("--probe", compare_opts.probe, "probe blob path")->required();
    compare_cmd->add_option("--target", compare_opts.target, "target blob path")->required();
    add_common(compare_cmd, compare_opts.common);

    PairMatchOpts pair_opts;
    CLI::App* pair_cmd =
        app.add_subcommand("pair-match", "word-pair matching against a blob");
    pair_cmd->add_option("--lexicon", pair_opts.lexicon, "lexicon TSV path")->required();
    pair_cmd->add_option("-x", pair_opts.word_x, "first word")->required();
    pair_cmd->add_option("-y", pair_opts.word_y, "second word")->required();
    pair_cmd->add_option("--target", pair_opts.target, "target blob path")->required();
    add_common(pair_cmd, pair_opts.common);

    AttackOpts attack_opts;
    CLI::App* attack_cmd =
        app.add_subcommand("attack", "brute-force word pairs against a blob");
    attack_cmd->add_option("--lexicon", attack_opts.lexicon, "lexicon TSV path")->required();
    attack_cmd->add_option("--target", attack_opts.target, "target blob path")->required();
    attack_cmd->add_option("--threshold", attack_opts.threshold,
                           "report pairs with zeta at or above this")
        ->default_val(1.0);
    attack_cmd->add_option("--known", attack_opts.known,
                           "search only pairs containing this word");
    attack_cmd
        ->add_option("--bench", attack_opts.bench,
                     "time this many sampled pairs and extrapolate")
        ->trigger_on_parse()
        ->each([&](const std::string&) { attack_opts.bench_given = true; });
    attack_cmd->add_option("--resume", attack_opts.resume,
                           "checkpoint state file, resumed when present");
    add_common(attack_cmd, attack_opts.common);

    ExperimentOpts experiment_opts;
    CLI::App* experiment_cmd =
        app.add_subcommand("experiment", "overlap histogram over message pairs");
    experiment_cmd->add_option("--lexicon", experiment_opts.lexicon, "lexicon TSV path")
        ->required();
    experiment_cmd
        ->add_option("--mode", experiment_opts.mode, "random or related pairs")
        ->required()
        ->check(CLI::IsMember({"random", "related"}));
    experiment_cmd->add_option("--pairs", experiment_opts.pairs, "message pairs to run")
        ->default_val(1000);
    experiment_cmd
        ->add_option("--words", experiment_opts.words, "words per message")
        ->default_val(20);
    experiment_cmd->add_option("-n,--arity", experiment_opts.n, "summands per value")
        ->default_val(2);
    experiment_cmd->add_option("--csv", experiment_opts.csv, "write the histogram here")
        ->required();
    add_common(experiment_cmd, experiment_opts.common);

    EncodeInfoOpts info_opts;
    CLI::App* info_cmd =
        app.add_subcommand("encode-info", "header and payload accounting of a blob");
    info_cmd->add_option("--blob", info_opts.blob, "encoded blob path")->required();
    add_common(info_cmd, info_opts.common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // help text
        std::cerr << "nsum: " << e.what() << '\n' << app.help();
        return 1;
    }

    try {
        if (stats_cmd->parsed()) return run_stats(stats_opts);
        if (encrypt_cmd->parsed()) return run_encrypt(encrypt_opts);
        if (compare_cmd->parsed()) return run_compare(compare_opts);
        if (pair_cmd->parsed()) return run_pair_match(pair_opts);
        if (attack_cmd->parsed()) return run_attack(attack_opts);
        if (experiment_cmd->parsed()) return run_experiment(experiment_opts);
        if (info_cmd->parsed()) return run_encode_info(info_opts);
    } catch (const std::exception& e) {
        std::cerr << "nsum: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
