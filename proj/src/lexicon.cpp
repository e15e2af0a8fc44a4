#include "deop/lexicon.hpp"

#include <algorithm>
#include <set>

#include "deop/errors.hpp"
#include "deop/tokenizer.hpp"

namespace deop {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

std::vector<std::string> split_ws(std::string_view s) {
    std::vector<std::string> parts;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        std::size_t j = i;
        while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
        if (j > i) parts.emplace_back(s.substr(i, j - i));
        i = j;
    }
    return parts;
}

// Alternatives of one token position; empty alternatives ("a//b") are
// dropped, and a position with none left is a parse error.
std::vector<std::string> expand_position(std::string_view token) {
    std::vector<std::string> alts;
    std::size_t i = 0;
    while (i <= token.size()) {
        std::size_t j = token.find('/', i);
        if (j == std::string_view::npos) j = token.size();
        if (j > i) alts.emplace_back(token.substr(i, j - i));
        i = j + 1;
    }
    return alts;
}

}  // namespace

std::vector<NpiPattern> parse_npi_patterns(std::string_view text,
                                           std::string_view origin) {
    std::vector<NpiPattern> patterns;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        ++line_no;
        std::string_view line = trim(text.substr(pos, eol - pos));
        pos = eol + 1;
        if (line.empty() || line.front() == '#') continue;

        std::string source(line);
        std::string folded = source;
        fold_case(folded);
        auto positions = split_ws(folded);

        std::vector<std::vector<std::string>> alternatives;
        alternatives.reserve(positions.size());
        for (const auto& token : positions) {
            auto alts = expand_position(token);
            if (alts.empty())
                throw ConfigError(std::string(origin) + ": empty expansion at line " +
                                  std::to_string(line_no) + ": \"" + source + "\"");
            alternatives.push_back(std::move(alts));
        }
        if (alternatives.empty())
            throw ConfigError(std::string(origin) + ": empty expansion at line " +
                              std::to_string(line_no));

        // Cartesian product over positions.
        std::vector<std::vector<std::string>> expanded = {{}};
        for (const auto& alts : alternatives) {
            std::vector<std::vector<std::string>> next;
            next.reserve(expanded.size() * alts.size());
            for (const auto& prefix : expanded)
                for (const auto& alt : alts) {
                    auto seq = prefix;
                    seq.push_back(alt);
                    next.push_back(std::move(seq));
                }
            expanded = std::move(next);
        }
        for (auto& seq : expanded)
            patterns.push_back(NpiPattern{std::move(seq), source});
    }
    return patterns;
}

TokenSet parse_blocklist(std::string_view text, std::string_view origin) {
    TokenSet blocklist;
    for (const auto& pattern : parse_npi_patterns(text, origin)) {
        if (pattern.tokens.size() != 1)
            throw ConfigError(std::string(origin) +
                              ": entries must be single tokens, got \"" +
                              pattern.source_line + "\"");
        blocklist.insert(pattern.tokens.front());
    }
    return blocklist;
}

std::string serialize_patterns(const std::vector<NpiPattern>& patterns) {
    // One line per distinct source entry, in first-seen order.
    std::vector<std::string> lines;
    std::set<std::string> seen;
    for (const auto& p : patterns)
        if (seen.insert(p.source_line).second) lines.push_back(p.source_line);
    std::string out;
    for (const auto& line : lines) {
        out += line;
        out += '\n';
    }
    return out;
}

NpiLexicon::NpiLexicon(std::vector<NpiPattern> patterns, TokenSet blocklist)
    : patterns_(std::move(patterns)), blocklist_(std::move(blocklist)) {
    trie_.emplace_back();
    for (std::uint32_t pi = 0; pi < patterns_.size(); ++pi) {
        const auto& toks = patterns_[pi].tokens;
        max_len_ = std::max(max_len_, toks.size());
        std::uint32_t node = 0;
        for (const auto& tok : toks) {
            auto it = trie_[node].children.find(tok);
            if (it == trie_[node].children.end()) {
                trie_[node].children.emplace(tok,
                                             static_cast<std::uint32_t>(trie_.size()));
                node = static_cast<std::uint32_t>(trie_.size());
                trie_.emplace_back();
            } else {
                node = it->second;
            }
        }
        if (trie_[node].pattern < 0) trie_[node].pattern = static_cast<std::int32_t>(pi);
    }
}

std::size_t NpiLexicon::longest_match_at(const std::vector<std::string>& tokens,
                                         std::size_t pos,
                                         std::uint32_t* pattern_index) const {
    std::uint32_t node = 0;
    std::size_t best_len = 0;
    for (std::size_t len = 1; len <= max_len_ && pos + len <= tokens.size(); ++len) {
        auto it = trie_[node].children.find(std::string_view(tokens[pos + len - 1]));
        if (it == trie_[node].children.end()) break;
        node = it->second;
        if (trie_[node].pattern >= 0) {
            best_len = len;
            *pattern_index = static_cast<std::uint32_t>(trie_[node].pattern);
        }
    }
    return best_len;
}

std::vector<NpiMatch> match_npis(const Sentence& sentence, const NpiLexicon& lexicon) {
    std::vector<NpiMatch> matches;
    std::size_t i = 0;
    while (i < sentence.tokens.size()) {
        std::uint32_t pattern_index = 0;
        const std::size_t len = lexicon.longest_match_at(sentence.tokens, i,
                                                         &pattern_index);
        if (len > 0) {
            matches.push_back(NpiMatch{sentence.id, static_cast<std::uint32_t>(i),
                                       static_cast<std::uint32_t>(i + len),
                                       pattern_index});
            i += len;
        } else {
            ++i;
        }
    }
    return matches;
}

NpiLexicon default_lexicon() {
    return NpiLexicon(parse_npi_patterns(default_npi_lexicon_text()),
                      parse_blocklist(default_blocklist_text()));
}

}  // namespace deop
