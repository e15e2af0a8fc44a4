#include "deop/context.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "deop/tokenizer.hpp"

namespace deop {

namespace {

bool is_boundary_token(const std::string& tok) { return tok == "," || tok == ";"; }

}  // namespace

std::vector<std::string> candidate_tokens(const Sentence& sentence,
                                          std::uint32_t start, std::uint32_t end,
                                          const std::vector<NpiMatch>& matches) {
    std::vector<bool> covered(sentence.tokens.size(), false);
    for (const auto& m : matches)
        for (std::uint32_t i = m.start; i < m.end; ++i) covered[i] = true;

    std::vector<std::string> out;
    for (std::uint32_t i = start; i < end; ++i) {
        if (covered[i]) continue;
        const auto& tok = sentence.tokens[i];
        if (is_punctuation_token(tok)) continue;
        out.push_back(tok);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<NpiContext> extract_contexts(const Sentence& sentence,
                                         const std::vector<NpiMatch>& matches,
                                         const TokenSet& blocklist,
                                         bool dedup_spans) {
    std::vector<NpiContext> contexts;
    std::set<std::pair<std::uint32_t, std::uint32_t>> seen;

    for (const auto& match : matches) {
        std::uint32_t begin = 0;
        for (std::uint32_t i = match.start; i > 0; --i) {
            if (is_boundary_token(sentence.tokens[i - 1])) {
                begin = i;
                break;
            }
        }
        if (begin == match.start) continue;  // empty span
        if (dedup_spans && !seen.insert({begin, match.start}).second) continue;

        NpiContext ctx;
        ctx.sentence_id = sentence.id;
        ctx.start = begin;
        ctx.end = match.start;
        ctx.trigger_start = match.start;
        ctx.trigger_end = match.end;
        ctx.pattern_index = match.pattern_index;
        ctx.retained = true;
        for (std::uint32_t i = begin; i < match.start; ++i) {
            const auto& tok = sentence.tokens[i];
            if (blocklist.contains(tok)) ctx.retained = false;
            ctx.span_tokens.push_back(tok);
        }
        ctx.candidates = candidate_tokens(sentence, begin, match.start, matches);
        contexts.push_back(std::move(ctx));
    }
    return contexts;
}

void sort_contexts(std::vector<NpiContext>& contexts) {
    std::sort(contexts.begin(), contexts.end(),
              [](const NpiContext& a, const NpiContext& b) {
                  return std::tie(a.sentence_id, a.start, a.end) <
                         std::tie(b.sentence_id, b.start, b.end);
              });
}

}  // namespace deop
