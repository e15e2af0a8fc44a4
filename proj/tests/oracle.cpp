#include "oracle.hpp"

#include <algorithm>
#include <cctype>

namespace oracle {

namespace {

bool tokens_equal(const Tokens& sentence, std::size_t pos, const Tokens& pattern) {
    if (pos + pattern.size() > sentence.size()) return false;
    for (std::size_t i = 0; i < pattern.size(); ++i)
        if (sentence[pos + i] != pattern[i]) return false;
    return true;
}

bool all_punct(const std::string& token) {
    if (token.empty()) return false;
    for (const char c : token) {
        const unsigned char u = static_cast<unsigned char>(c);
        if (u >= 0x80 || !std::ispunct(u)) return false;
    }
    return true;
}

}  // namespace

std::vector<std::pair<std::size_t, std::size_t>> match(
    const Tokens& sentence, const std::vector<Tokens>& patterns) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    std::size_t i = 0;
    while (i < sentence.size()) {
        std::size_t best = 0;
        for (const auto& p : patterns)
            if (p.size() > best && tokens_equal(sentence, i, p)) best = p.size();
        if (best > 0) {
            out.emplace_back(i, i + best);
            i += best;
        } else {
            ++i;
        }
    }
    return out;
}

Extraction extract(const std::vector<Tokens>& corpus,
                   const std::vector<Tokens>& patterns,
                   const std::set<std::string>& blocklist) {
    Extraction ex;
    for (std::size_t si = 0; si < corpus.size(); ++si) {
        const Tokens& sentence = corpus[si];
        const auto matches = match(sentence, patterns);
        std::vector<bool> covered(sentence.size(), false);
        for (const auto& [ms, me] : matches)
            for (std::size_t i = ms; i < me; ++i) covered[i] = true;

        std::set<std::pair<std::size_t, std::size_t>> seen_spans;
        for (const auto& [ms, me] : matches) {
            std::size_t begin = 0;
            for (std::size_t i = ms; i > 0; --i)
                if (sentence[i - 1] == "," || sentence[i - 1] == ";") {
                    begin = i;
                    break;
                }
            if (begin == ms) continue;
            if (!seen_spans.insert({begin, ms}).second) continue;

            Context ctx;
            ctx.sentence = si;
            ctx.start = begin;
            ctx.end = ms;
            ctx.retained = true;
            for (std::size_t i = begin; i < ms; ++i) {
                if (blocklist.count(sentence[i]) > 0) ctx.retained = false;
                if (!covered[i] && !all_punct(sentence[i]))
                    ctx.candidates.insert(sentence[i]);
            }
            ++ex.total;
            if (ctx.retained) ++ex.retained;
            ex.contexts.push_back(std::move(ctx));
        }
    }
    return ex;
}

std::set<std::string> select(const std::vector<Tokens>& corpus,
                             const Extraction& extraction,
                             std::uint64_t min_corpus, std::uint64_t min_ctx) {
    std::set<std::string> out;
    std::set<std::string> vocabulary;
    for (const auto& sentence : corpus)
        for (const auto& tok : sentence) vocabulary.insert(tok);

    for (const auto& token : vocabulary) {
        std::uint64_t in_corpus = 0;
        for (const auto& sentence : corpus)
            for (const auto& tok : sentence)
                if (tok == token) ++in_corpus;
        std::uint64_t in_contexts = 0;
        for (const auto& ctx : extraction.contexts)
            if (ctx.retained && ctx.candidates.count(token) > 0) ++in_contexts;
        if (in_corpus > min_corpus && in_contexts > min_ctx) out.insert(token);
    }
    return out;
}

Scores score(const std::vector<Tokens>& corpus, const Extraction& extraction,
             const std::set<std::string>& candidates) {
    Scores result;

    std::uint64_t corpus_tokens = 0;
    for (const auto& sentence : corpus) corpus_tokens += sentence.size();
    std::uint64_t ctx_tokens = 0;
    for (const auto& ctx : extraction.contexts)
        if (ctx.retained) ctx_tokens += ctx.end - ctx.start;

    for (const auto& token : candidates) {
        std::uint64_t in_corpus = 0;
        for (const auto& sentence : corpus)
            for (const auto& tok : sentence)
                if (tok == token) ++in_corpus;
        std::uint64_t in_contexts = 0;
        for (const auto& ctx : extraction.contexts)
            if (ctx.retained && ctx.candidates.count(token) > 0) ++in_contexts;

        double s = 0.0;
        if (in_corpus > 0 && in_contexts > 0 && ctx_tokens > 0)
            s = (static_cast<double>(in_contexts) / static_cast<double>(ctx_tokens)) /
                (static_cast<double>(in_corpus) / static_cast<double>(corpus_tokens));
        result.s[token] = s;
    }

    for (const auto& token : candidates) {
        double share_sum = 0.0;
        std::size_t n = 0;
        for (const auto& ctx : extraction.contexts) {
            if (!ctx.retained || ctx.candidates.count(token) == 0) continue;
            double norm = 0.0;
            bool any_scored = false;
            for (const auto& cand : ctx.candidates) {
                auto it = result.s.find(cand);
                if (it != result.s.end()) {
                    norm += it->second;
                    any_scored = true;
                }
            }
            if (!any_scored || norm <= 0.0) continue;
            share_sum += result.s[token] / norm;
            ++n;
        }
        result.s_d[token] = n == 0 ? 0.0 : share_sum / static_cast<double>(n);
        result.n_contexts[token] = n;
    }
    return result;
}

std::vector<std::string> rank(const Scores& scores, bool distilled) {
    std::vector<std::string> tokens;
    for (const auto& [token, value] : scores.s) tokens.push_back(token);
    std::sort(tokens.begin(), tokens.end(),
              [&](const std::string& a, const std::string& b) {
                  const double va = distilled ? scores.s_d.at(a) : scores.s.at(a);
                  const double vb = distilled ? scores.s_d.at(b) : scores.s.at(b);
                  if (va != vb) return va > vb;
                  const std::size_t na = scores.n_contexts.at(a);
                  const std::size_t nb = scores.n_contexts.at(b);
                  if (na != nb) return na > nb;
                  return a < b;
              });
    return tokens;
}

}  // namespace oracle
