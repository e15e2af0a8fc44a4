#ifndef DEOP_TESTS_TESTUTIL_HPP
#define DEOP_TESTS_TESTUTIL_HPP

#include <sys/wait.h>
#include <unistd.h>

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "deop/context.hpp"
#include "deop/corpus.hpp"
#include "deop/lexicon.hpp"
#include "deop/pipeline.hpp"

namespace testutil {

// Unique scratch directory, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        static std::atomic<unsigned> counter{0};
        path_ = std::filesystem::temp_directory_path() /
                ("deop_" + tag + "_" + std::to_string(::getpid()) + "_" +
                 std::to_string(counter++));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    std::string file(const std::string& name) const {
        return (path_ / name).string();
    }
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

inline void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
}

inline std::string sentences_to_text(
    const std::vector<std::vector<std::string>>& sentences) {
    std::string out;
    for (const auto& s : sentences) {
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (i > 0) out += ' ';
            out += s[i];
        }
        out += '\n';
    }
    return out;
}

inline std::vector<deop::Sentence> to_sentences(
    const std::vector<std::vector<std::string>>& tokens) {
    std::vector<deop::Sentence> out;
    for (std::size_t i = 0; i < tokens.size(); ++i)
        out.push_back(deop::Sentence{i, tokens[i]});
    return out;
}

// In-memory equivalent of the ingestion pass, for tests that do not want
// to round-trip through files.
inline deop::IngestResult ingest_sentences(
    const std::vector<std::vector<std::string>>& tokens,
    const deop::NpiLexicon& lexicon, bool dedup_spans = true) {
    deop::IngestResult result;
    for (const auto& sentence : to_sentences(tokens)) {
        result.stats.add(sentence);
        const auto matches = deop::match_npis(sentence, lexicon);
        if (matches.empty()) continue;
        auto contexts = deop::extract_contexts(sentence, matches,
                                               lexicon.blocklist(), dedup_spans);
        result.contexts_total += contexts.size();
        for (auto& ctx : contexts) {
            if (ctx.retained) ++result.contexts_retained;
            result.contexts.push_back(std::move(ctx));
        }
    }
    deop::sort_contexts(result.contexts);
    return result;
}

struct CommandResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

// Runs a shell command, capturing exit code and both streams.
inline CommandResult run_command(const std::string& command) {
    static std::atomic<unsigned> counter{0};
    const auto base = std::filesystem::temp_directory_path() /
                      ("deop_cmd_" + std::to_string(::getpid()) + "_" +
                       std::to_string(counter++));
    const std::string out_path = base.string() + ".out";
    const std::string err_path = base.string() + ".err";
    const int status = std::system(
        (command + " > " + out_path + " 2> " + err_path).c_str());

    CommandResult result;
    if (WIFEXITED(status)) result.exit_code = WEXITSTATUS(status);
    const auto slurp = [](const std::string& p) {
        std::ifstream in(p, std::ios::binary);
        return std::string(std::istreambuf_iterator<char>(in), {});
    };
    result.out = slurp(out_path);
    result.err = slurp(err_path);
    std::error_code ec;
    std::filesystem::remove(out_path, ec);
    std::filesystem::remove(err_path, ec);
    return result;
}

// Random mini-corpus over a small vocabulary with NPIs, blocklist words,
// commas and punctuation mixed in. Uses raw mt19937 output so the
// sequence is identical everywhere.
inline std::vector<std::vector<std::string>> random_mini_corpus(std::uint32_t seed) {
    std::mt19937 rng(seed);
    // "at"/"all", "in"/"weeks", "red"/"cent" sit in the word pool so
    // multi-token NPI patterns form by chance adjacency.
    const std::vector<std::string> words = {
        "alpha", "bravo", "charlie", "delta", "echo",  "foxtrot", "golf",
        "hotel", "india", "juliet",  "kilo",  "lima",  "mike",    "november",
        "oscar", "papa",  "quebec",  "romeo", "sierra", "tango",   "at",
        "all",   "in",    "weeks",   "red",   "cent"};
    const std::vector<std::string> npis = {"any", "ever", "yet", "budge"};
    const std::vector<std::string> blockers = {"not", "n't", "without", "no"};

    const std::size_t n_sentences = 20 + rng() % 181;  // 20..200
    std::vector<std::vector<std::string>> corpus;
    for (std::size_t si = 0; si < n_sentences; ++si) {
        const std::size_t len = 1 + rng() % 12;
        std::vector<std::string> sentence;
        for (std::size_t t = 0; t < len; ++t) {
            const unsigned roll = rng() % 100;
            if (roll < 62)
                sentence.push_back(words[rng() % words.size()]);
            else if (roll < 80)
                sentence.push_back(npis[rng() % npis.size()]);
            else if (roll < 88)
                sentence.push_back(blockers[rng() % blockers.size()]);
            else if (roll < 93)
                sentence.push_back(",");
            else if (roll < 96)
                sentence.push_back(";");
            else
                sentence.push_back(".");
        }
        corpus.push_back(std::move(sentence));
    }
    return corpus;
}

}  // namespace testutil

#endif  // DEOP_TESTS_TESTUTIL_HPP
