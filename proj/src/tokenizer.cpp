#include "deop/tokenizer.hpp"

#include <array>
#include <cctype>

namespace deop {

namespace {

bool is_comma_or_semi(char c) { return c == ',' || c == ';'; }

bool is_terminal_punct(char c) { return c == '.' || c == '!' || c == '?'; }

// PTB clitics split off in basic mode, longest first.
constexpr std::array<std::string_view, 6> kClitics = {"'re", "'ve", "'ll",
                                                      "'s",  "'d",  "'m"};

void append_core_token(std::string_view core, TokenizerMode mode,
                       std::vector<std::string>& out) {
    if (core.empty()) return;
    if (mode == TokenizerMode::kBasic) {
        if (core.size() > 3 && core.substr(core.size() - 3) == "n't") {
            out.emplace_back(core.substr(0, core.size() - 3));
            out.emplace_back("n't");
            return;
        }
        for (std::string_view clitic : kClitics) {
            if (core.size() > clitic.size() &&
                core.substr(core.size() - clitic.size()) == clitic) {
                out.emplace_back(core.substr(0, core.size() - clitic.size()));
                out.emplace_back(clitic);
                return;
            }
        }
    }
    out.emplace_back(core);
}

bool is_ascii_digit(char c) { return c >= '0' && c <= '9'; }

void emit_piece(std::string_view piece, TokenizerMode mode,
                std::vector<std::string>& out) {
    if (piece.empty()) return;
    if (mode == TokenizerMode::kBasic) {
        // Detach a trailing run of sentence-final punctuation as one token,
        // but leave pure-punctuation tokens like "..." intact.
        std::size_t cut = piece.size();
        while (cut > 0 && is_terminal_punct(piece[cut - 1])) --cut;
        if (cut > 0 && cut < piece.size()) {
            append_core_token(piece.substr(0, cut), mode, out);
            out.emplace_back(piece.substr(cut));
            return;
        }
    }
    append_core_token(piece, mode, out);
}

void split_chunk(std::string_view chunk, TokenizerMode mode,
                 std::vector<std::string>& out) {
    // Commas and semicolons become standalone tokens in both modes; the
    // one exception is a comma between digits ("3,000"), which stays put.
    std::size_t piece_start = 0;
    for (std::size_t i = 0; i < chunk.size(); ++i) {
        if (!is_comma_or_semi(chunk[i])) continue;
        if (chunk[i] == ',' && i > 0 && i + 1 < chunk.size() &&
            is_ascii_digit(chunk[i - 1]) && is_ascii_digit(chunk[i + 1]))
            continue;
        emit_piece(chunk.substr(piece_start, i - piece_start), mode, out);
        out.emplace_back(1, chunk[i]);
        piece_start = i + 1;
    }
    emit_piece(chunk.substr(piece_start), mode, out);
}

}  // namespace

std::optional<TokenizerMode> parse_tokenizer_mode(std::string_view name) {
    if (name == "pretokenized") return TokenizerMode::kPretokenized;
    if (name == "basic") return TokenizerMode::kBasic;
    return std::nullopt;
}

std::string_view tokenizer_mode_name(TokenizerMode mode) {
    return mode == TokenizerMode::kPretokenized ? "pretokenized" : "basic";
}

void fold_case(std::string& s) {
    for (char& c : s)
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
}

bool valid_utf8(std::string_view s) {
    std::size_t i = 0;
    const std::size_t n = s.size();
    while (i < n) {
        const unsigned char b = static_cast<unsigned char>(s[i]);
        std::size_t len;
        unsigned cp;
        if (b < 0x80) {
            ++i;
            continue;
        } else if ((b & 0xe0) == 0xc0) {
            len = 2;
            cp = b & 0x1f;
        } else if ((b & 0xf0) == 0xe0) {
            len = 3;
            cp = b & 0x0f;
        } else if ((b & 0xf8) == 0xf0) {
            len = 4;
            cp = b & 0x07;
        } else {
            return false;
        }
        if (i + len > n) return false;
        for (std::size_t k = 1; k < len; ++k) {
            const unsigned char c = static_cast<unsigned char>(s[i + k]);
            if ((c & 0xc0) != 0x80) return false;
            cp = (cp << 6) | (c & 0x3f);
        }
        // Reject overlong encodings, surrogates, and out-of-range points.
        if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) ||
            (len == 4 && cp < 0x10000))
            return false;
        if (cp > 0x10ffff || (cp >= 0xd800 && cp <= 0xdfff)) return false;
        i += len;
    }
    return true;
}

bool is_punctuation_token(std::string_view token) {
    if (token.empty()) return false;
    for (char c : token) {
        const unsigned char u = static_cast<unsigned char>(c);
        if (u >= 0x80 || !std::ispunct(u)) return false;
    }
    return true;
}

std::vector<std::string> tokenize_line(std::string_view raw, TokenizerMode mode) {
    std::vector<std::string> out;
    std::size_t i = 0;
    const std::size_t n = raw.size();
    while (i < n) {
        while (i < n && std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
        std::size_t j = i;
        while (j < n && !std::isspace(static_cast<unsigned char>(raw[j]))) ++j;
        if (j > i) {
            std::string chunk(raw.substr(i, j - i));
            fold_case(chunk);
            split_chunk(chunk, mode, out);
        }
        i = j;
    }
    return out;
}

}  // namespace deop
