#ifndef DEOP_CONTEXT_HPP
#define DEOP_CONTEXT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "deop/corpus.hpp"
#include "deop/lexicon.hpp"

namespace deop {

// The token span to the left of one NPI occurrence, truncated at the
// nearest preceding comma or semicolon. Only retained contexts (no
// blocklisted operator inside the span) feed scoring.
struct NpiContext {
    std::uint64_t sentence_id = 0;
    std::uint32_t start = 0;           // span start, inclusive
    std::uint32_t end = 0;             // span end = NPI match start
    std::uint32_t trigger_start = 0;
    std::uint32_t trigger_end = 0;
    std::uint32_t pattern_index = 0;
    bool retained = false;
    std::vector<std::string> span_tokens;
    std::vector<std::string> candidates;  // sorted, deduplicated

    std::uint32_t span_length() const { return end - start; }
};

// Candidate word types of a span: deduplicated, punctuation tokens
// dropped, and positions covered by any NPI match dropped. Returned
// sorted so downstream accumulation order is canonical.
std::vector<std::string> candidate_tokens(const Sentence& sentence,
                                          std::uint32_t start, std::uint32_t end,
                                          const std::vector<NpiMatch>& matches);

// One context per NPI match; empty spans produce nothing and duplicate
// (start, end) spans within one sentence are emitted once.
std::vector<NpiContext> extract_contexts(const Sentence& sentence,
                                         const std::vector<NpiMatch>& matches,
                                         const TokenSet& blocklist,
                                         bool dedup_spans = true);

// Canonical ordering used before any floating-point accumulation, so
// results do not depend on shard count.
void sort_contexts(std::vector<NpiContext>& contexts);

}  // namespace deop

#endif  // DEOP_CONTEXT_HPP
