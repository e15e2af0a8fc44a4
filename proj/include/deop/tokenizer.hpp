#ifndef DEOP_TOKENIZER_HPP
#define DEOP_TOKENIZER_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace deop {

// `pretokenized`: one sentence per line, tokens separated by whitespace,
// PTB-style contractions already split. `basic`: additionally detaches
// terminal punctuation and splits English contractions ("don't" -> do n't).
enum class TokenizerMode { kPretokenized, kBasic };

std::optional<TokenizerMode> parse_tokenizer_mode(std::string_view name);
std::string_view tokenizer_mode_name(TokenizerMode mode);

// ASCII lowercasing; bytes outside A-Z are left untouched.
void fold_case(std::string& s);

bool valid_utf8(std::string_view s);

// True for tokens made entirely of ASCII punctuation (",", "--", "...").
// Such tokens are kept in sentences but are never scoring candidates.
bool is_punctuation_token(std::string_view token);

// Splits one corpus line into case-folded tokens. Commas and semicolons
// come out as standalone tokens in both modes (they delimit NPI contexts).
// A line with no tokens yields an empty vector; callers skip it.
std::vector<std::string> tokenize_line(std::string_view raw, TokenizerMode mode);

}  // namespace deop

#endif  // DEOP_TOKENIZER_HPP
