#ifndef DEOP_CORPUS_HPP
#define DEOP_CORPUS_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "deop/tokenizer.hpp"

namespace deop {

// Transparent hashing so counts can be probed with string_view keys.
struct StringHash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const noexcept {
        return std::hash<std::string_view>{}(s);
    }
};

template <typename V>
using StringMap = std::unordered_map<std::string, V, StringHash, std::equal_to<>>;

struct Sentence {
    std::uint64_t id = 0;  // ordinal index among non-empty lines, file order
    std::vector<std::string> tokens;
};

// Whole-corpus token statistics; the denominator side of F(x).
struct CorpusStats {
    std::uint64_t sentence_count = 0;
    std::uint64_t token_count = 0;
    StringMap<std::uint64_t> type_counts;

    void add(const Sentence& sentence);
    // Counts are additive, so any sharding of the corpus merges exactly.
    void merge(CorpusStats&& other);
};

CorpusStats corpus_stats(const std::vector<Sentence>& sentences);

// Line-at-a-time reader; gzip-compressed input is selected by a ".gz"
// suffix. Throws IoError if the file cannot be opened.
class LineReader {
public:
    virtual ~LineReader() = default;
    virtual bool next(std::string& line) = 0;
};

std::unique_ptr<LineReader> open_line_reader(const std::string& path);

// Reader over the byte range [begin, end) of an uncompressed file, with
// the start snapped forward past the first newline (a line belongs to the
// shard its first byte falls in). Used for parallel ingestion.
std::unique_ptr<LineReader> open_byte_range_reader(const std::string& path,
                                                   std::uint64_t begin,
                                                   std::uint64_t end);

std::uint64_t file_size_bytes(const std::string& path);

// Streams sentences from a corpus file in file order, skipping empty
// lines. Throws IoError on unreadable files or invalid UTF-8 (the message
// carries the 1-based physical line number).
void read_sentences(const std::string& path, TokenizerMode mode,
                    const std::function<void(Sentence&&)>& sink);

}  // namespace deop

#endif  // DEOP_CORPUS_HPP
