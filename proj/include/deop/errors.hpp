#ifndef DEOP_ERRORS_HPP
#define DEOP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace deop {

// Exit codes used by the CLI: 0 success, 2 config/format error,
// 3 I/O error, 4 empty-result error.
constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;
constexpr int kExitEmpty = 4;

// Bad option values, malformed lexicon/gold/seed files.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Missing or unreadable files, ingestion failures (bad encoding).
struct IoError : std::runtime_error {
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

// Pipeline produced nothing to score (e.g. no retained NPI contexts).
struct EmptyResultError : std::runtime_error {
    explicit EmptyResultError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace deop

#endif  // DEOP_ERRORS_HPP
