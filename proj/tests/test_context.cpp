#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "deop/context.hpp"
#include "deop/errors.hpp"
#include "deop/lexicon.hpp"
#include "deop/pipeline.hpp"
#include "oracle.hpp"
#include "testutil.hpp"
#include "toy_corpus.hpp"

using Tokens = std::vector<std::string>;

namespace {

deop::NpiLexicon test_lexicon() {
    return deop::NpiLexicon(
        deop::parse_npi_patterns("anymore\nany\never\nbudge\nat all\n"),
        deop::parse_blocklist(deop::default_blocklist_text()));
}

}  // namespace

TEST_CASE("comma truncation and blocklist flagging") {
    const auto lex = test_lexicon();
    deop::Sentence s{0, {"by", "the", "way", ",", "we", "do", "n't", "have",
                         "plants", "anymore", "because", "they", "died"}};
    const auto contexts =
        deop::extract_contexts(s, deop::match_npis(s, lex), lex.blocklist());
    REQUIRE(contexts.size() == 1);
    CHECK(contexts[0].start == 4);
    CHECK(contexts[0].end == 9);
    CHECK(contexts[0].span_tokens == Tokens{"we", "do", "n't", "have", "plants"});
    CHECK_FALSE(contexts[0].retained);  // span contains "n't"
    CHECK(contexts[0].trigger_start == 9);
}

TEST_CASE("same span without a comma") {
    const auto lex = test_lexicon();
    deop::Sentence s{3, {"we", "do", "n't", "have", "plants", "anymore"}};
    const auto contexts =
        deop::extract_contexts(s, deop::match_npis(s, lex), lex.blocklist());
    REQUIRE(contexts.size() == 1);
    CHECK(contexts[0].start == 0);
    CHECK(contexts[0].end == 5);
    CHECK(contexts[0].span_tokens == Tokens{"we", "do", "n't", "have", "plants"});
    CHECK_FALSE(contexts[0].retained);
    CHECK(contexts[0].sentence_id == 3);
}

TEST_CASE("NPI at segment start produces no context") {
    const auto lex = test_lexicon();
    deop::Sentence initial{0, {"anymore", "is", "rare"}};
    CHECK(deop::extract_contexts(initial, deop::match_npis(initial, lex),
                                 lex.blocklist())
              .empty());

    deop::Sentence after_comma{1, {"well", ",", "any", "idea", "helps"}};
    CHECK(deop::extract_contexts(after_comma, deop::match_npis(after_comma, lex),
                                 lex.blocklist())
              .empty());
}

TEST_CASE("retained context with candidates") {
    const auto lex = test_lexicon();
    deop::Sentence s{0, {"the", "board", "refuses", "any", "delay"}};
    const auto contexts =
        deop::extract_contexts(s, deop::match_npis(s, lex), lex.blocklist());
    REQUIRE(contexts.size() == 1);
    CHECK(contexts[0].retained);
    CHECK(contexts[0].candidates == Tokens{"board", "refuses", "the"});
}

TEST_CASE("candidate sets: dedupe, punctuation and NPI-covered exclusion") {
    SUBCASE("all distinct") {
        deop::Sentence s{0, {"we", "do", "n't", "have", "plants", "anymore"}};
        const auto cands = deop::candidate_tokens(s, 0, 5, {});
        CHECK(cands == Tokens{"do", "have", "n't", "plants", "we"});
    }
    SUBCASE("dedupe and covered positions") {
        // "budge" is an NPI-covered position inside a later NPI's span.
        deop::Sentence s{0, {"he", "did", "not", "budge", "he", "did", "ever"}};
        const std::vector<deop::NpiMatch> matches = {{0, 3, 4, 0}, {0, 6, 7, 1}};
        const auto cands = deop::candidate_tokens(s, 0, 6, matches);
        CHECK(cands == Tokens{"did", "he", "not"});
    }
    SUBCASE("duplicate types counted once") {
        deop::Sentence s{0, {"the", "the", "any"}};
        const auto cands = deop::candidate_tokens(s, 0, 2, {});
        CHECK(cands == Tokens{"the"});
    }
    SUBCASE("punctuation excluded") {
        deop::Sentence s{0, {"prices", "--", "plants", "any"}};
        const auto cands = deop::candidate_tokens(s, 0, 3, {});
        CHECK(cands == Tokens{"plants", "prices"});
    }
}

TEST_CASE("multiple NPIs in one sentence keep separate overlapping contexts") {
    const auto lex = test_lexicon();
    deop::Sentence s{0, {"they", "would", "not", "budge", "ever"}};
    const auto matches = deop::match_npis(s, lex);
    REQUIRE(matches.size() == 2);  // budge, ever
    const auto contexts = deop::extract_contexts(s, matches, lex.blocklist());
    REQUIRE(contexts.size() == 2);
    CHECK(contexts[0].end == 3);
    CHECK(contexts[1].end == 4);
    CHECK_FALSE(contexts[0].retained);
    CHECK_FALSE(contexts[1].retained);
    // "budge" is covered by its own match, so it is no one's candidate.
    for (const auto& ctx : contexts)
        for (const auto& c : ctx.candidates) CHECK(c != "budge");
}

TEST_CASE("span dedup is on by default and can be disabled") {
    const auto lex = test_lexicon();
    deop::Sentence s{0, {"the", "plan", "any", "any"}};
    // Matches at 2 and 3; contexts [0,2) and [0,3). Distinct spans: kept.
    const auto matches = deop::match_npis(s, lex);
    REQUIRE(matches.size() == 2);
    CHECK(deop::extract_contexts(s, matches, lex.blocklist(), true).size() == 2);
    CHECK(deop::extract_contexts(s, matches, lex.blocklist(), false).size() == 2);
}

TEST_CASE("context properties on random corpora") {
    const auto lex = deop::default_lexicon();
    for (int trial = 0; trial < 40; ++trial) {
        const auto corpus = testutil::random_mini_corpus(7000 + trial);
        const auto ingest = testutil::ingest_sentences(corpus, lex);
        for (const auto& ctx : ingest.contexts) {
            const auto& sentence = corpus[ctx.sentence_id];
            CHECK(ctx.start < ctx.end);
            CHECK(ctx.end <= sentence.size());
            CHECK(ctx.end == ctx.trigger_start);

            bool has_blocklisted = false;
            for (std::uint32_t i = ctx.start; i < ctx.end; ++i) {
                // No comma or semicolon inside the span.
                CHECK(sentence[i] != ",");
                CHECK(sentence[i] != ";");
                if (lex.blocklist().contains(sentence[i])) has_blocklisted = true;
            }
            CHECK(ctx.retained == !has_blocklisted);
        }
    }
}

TEST_CASE("bundled toy corpus context counts equal the brute-force extractor") {
    const auto lex = deop::default_lexicon();
    std::vector<Tokens> corpus;
    deop::read_sentences(std::string(DEOP_DATA_DIR) + "/toy_corpus.txt",
                         deop::TokenizerMode::kPretokenized,
                         [&](deop::Sentence&& s) { corpus.push_back(s.tokens); });
    REQUIRE(!corpus.empty());

    std::vector<Tokens> patterns;
    for (const auto& p : lex.patterns()) patterns.push_back(p.tokens);
    std::set<std::string> blocklist(lex.blocklist().begin(), lex.blocklist().end());

    const auto expected = oracle::extract(corpus, patterns, blocklist);
    const auto ingest = testutil::ingest_sentences(corpus, lex);

    CHECK(ingest.contexts_total == expected.total);
    CHECK(ingest.contexts_retained == expected.retained);
    REQUIRE(ingest.contexts.size() == expected.contexts.size());
    for (std::size_t i = 0; i < ingest.contexts.size(); ++i) {
        CHECK(ingest.contexts[i].sentence_id == expected.contexts[i].sentence);
        CHECK(ingest.contexts[i].start == expected.contexts[i].start);
        CHECK(ingest.contexts[i].end == expected.contexts[i].end);
        CHECK(ingest.contexts[i].retained == expected.contexts[i].retained);
        const std::set<std::string> got(ingest.contexts[i].candidates.begin(),
                                        ingest.contexts[i].candidates.end());
        CHECK(got == expected.contexts[i].candidates);
    }
}
