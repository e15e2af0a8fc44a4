#ifndef DEOP_LEXICON_HPP
#define DEOP_LEXICON_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "deop/corpus.hpp"

namespace deop {

using TokenSet = std::unordered_set<std::string, StringHash, std::equal_to<>>;

// One expanded NPI pattern: 1..4 case-folded tokens.
struct NpiPattern {
    std::vector<std::string> tokens;
    std::string source_line;  // lexicon entry the pattern was expanded from
};

struct NpiMatch {
    std::uint64_t sentence_id = 0;
    std::uint32_t start = 0;  // inclusive token index
    std::uint32_t end = 0;    // exclusive
    std::uint32_t pattern_index = 0;
};

// Parsed NPI lexicon plus the well-known-operator blocklist. Immutable
// after parsing; matching is stateless and thread-safe.
class NpiLexicon {
public:
    NpiLexicon(std::vector<NpiPattern> patterns, TokenSet blocklist);

    const std::vector<NpiPattern>& patterns() const { return patterns_; }
    const TokenSet& blocklist() const { return blocklist_; }
    std::size_t max_pattern_len() const { return max_len_; }

    // Longest pattern starting at sentence.tokens[pos]; 0 if none.
    // *pattern_index receives the match when the return value is > 0.
    std::size_t longest_match_at(const std::vector<std::string>& tokens,
                                 std::size_t pos, std::uint32_t* pattern_index) const;

private:
    struct TrieNode {
        StringMap<std::uint32_t> children;  // token -> node index
        std::int32_t pattern = -1;          // pattern ending here, -1 if none
    };

    std::vector<NpiPattern> patterns_;
    TokenSet blocklist_;
    std::vector<TrieNode> trie_;
    std::size_t max_len_ = 0;
};

// One pattern per non-comment line; '#' starts a comment, '/' expands a
// token position into alternatives ("in weeks/ages/years" -> 3 bigrams).
// Throws ConfigError with a line number when a position expands to
// nothing (a line of only slashes or whitespace-separated slashes).
std::vector<NpiPattern> parse_npi_patterns(std::string_view text,
                                           std::string_view origin = "npi lexicon");

// Same file format, entries restricted to single tokens.
TokenSet parse_blocklist(std::string_view text,
                         std::string_view origin = "blocklist");

// Round-trips through parse_npi_patterns (one entry per line, unexpanded
// source form).
std::string serialize_patterns(const std::vector<NpiPattern>& patterns);

// Bundled defaults (the 20-entry NPI list and the 10 well-known
// downward-entailing operators).
std::string_view default_npi_lexicon_text();
std::string_view default_blocklist_text();
NpiLexicon default_lexicon();

// Leftmost-longest non-overlapping matches, scanning left to right.
std::vector<NpiMatch> match_npis(const Sentence& sentence, const NpiLexicon& lexicon);

}  // namespace deop

#endif  // DEOP_LEXICON_HPP
