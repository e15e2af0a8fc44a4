#include "deop/corpus.hpp"

#include <zlib.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <utility>

#include "deop/errors.hpp"

namespace deop {

void CorpusStats::add(const Sentence& sentence) {
    ++sentence_count;
    token_count += sentence.tokens.size();
    for (const auto& tok : sentence.tokens) ++type_counts[tok];
}

void CorpusStats::merge(CorpusStats&& other) {
    sentence_count += other.sentence_count;
    token_count += other.token_count;
    if (type_counts.size() < other.type_counts.size())
        std::swap(type_counts, other.type_counts);
    for (auto& [type, count] : other.type_counts) type_counts[type] += count;
    other.type_counts.clear();
}

CorpusStats corpus_stats(const std::vector<Sentence>& sentences) {
    CorpusStats stats;
    for (const auto& s : sentences) stats.add(s);
    return stats;
}

namespace {

class PlainLineReader : public LineReader {
public:
    explicit PlainLineReader(const std::string& path) : in_(path, std::ios::binary) {
        if (!in_) throw IoError("cannot open corpus file: " + path);
    }

    bool next(std::string& line) override {
        if (!std::getline(in_, line)) return false;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        return true;
    }

private:
    std::ifstream in_;
};

class GzLineReader : public LineReader {
public:
    explicit GzLineReader(const std::string& path)
        : file_(gzopen(path.c_str(), "rb")), path_(path) {
        if (file_ == nullptr) throw IoError("cannot open gzip corpus file: " + path);
    }

    ~GzLineReader() override {
        if (file_ != nullptr) gzclose(file_);
    }

    bool next(std::string& line) override {
        line.clear();
        char buf[1 << 16];
        bool got_any = false;
        while (gzgets(file_, buf, sizeof(buf)) != nullptr) {
            got_any = true;
            line.append(buf);
            if (!line.empty() && line.back() == '\n') {
                line.pop_back();
                break;
            }
        }
        if (!got_any) {
            int errnum = 0;
            const char* msg = gzerror(file_, &errnum);
            if (errnum != Z_OK && errnum != Z_STREAM_END)
                throw IoError("gzip read error in " + path_ + ": " + msg);
            return false;
        }
        if (!line.empty() && line.back() == '\r') line.pop_back();
        return true;
    }

private:
    gzFile file_;
    std::string path_;
};

class ByteRangeLineReader : public LineReader {
public:
    ByteRangeLineReader(const std::string& path, std::uint64_t begin, std::uint64_t end)
        : in_(path, std::ios::binary), end_(end) {
        if (!in_) throw IoError("cannot open corpus file: " + path);
        pos_ = begin;
        if (begin > 0) {
            in_.seekg(static_cast<std::streamoff>(begin - 1));
            // Skip the tail of the line owned by the previous shard.
            std::string skipped;
            if (std::getline(in_, skipped))
                pos_ = begin - 1 + skipped.size() + 1;
            else
                pos_ = end_;
        }
    }

    bool next(std::string& line) override {
        if (pos_ >= end_) return false;
        if (!std::getline(in_, line)) return false;
        pos_ += line.size() + 1;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        return true;
    }

private:
    std::ifstream in_;
    std::uint64_t end_;
    std::uint64_t pos_ = 0;
};

bool has_gz_suffix(const std::string& path) {
    return path.size() > 3 && path.compare(path.size() - 3, 3, ".gz") == 0;
}

}  // namespace

std::unique_ptr<LineReader> open_line_reader(const std::string& path) {
    if (has_gz_suffix(path)) return std::make_unique<GzLineReader>(path);
    return std::make_unique<PlainLineReader>(path);
}

std::unique_ptr<LineReader> open_byte_range_reader(const std::string& path,
                                                   std::uint64_t begin,
                                                   std::uint64_t end) {
    return std::make_unique<ByteRangeLineReader>(path, begin, end);
}

std::uint64_t file_size_bytes(const std::string& path) {
    std::error_code ec;
    const auto size = std::filesystem::file_size(path, ec);
    if (ec) throw IoError("cannot stat corpus file: " + path);
    return size;
}

void read_sentences(const std::string& path, TokenizerMode mode,
                    const std::function<void(Sentence&&)>& sink) {
    auto reader = open_line_reader(path);
    std::string line;
    std::uint64_t line_no = 0;
    std::uint64_t next_id = 0;
    while (reader->next(line)) {
        ++line_no;
        if (!valid_utf8(line))
            throw IoError("invalid UTF-8 in " + path + " at line " +
                          std::to_string(line_no));
        auto tokens = tokenize_line(line, mode);
        if (tokens.empty()) continue;
        sink(Sentence{next_id++, std::move(tokens)});
    }
}

}  // namespace deop
