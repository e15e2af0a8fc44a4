#ifndef DEOP_NUMFMT_HPP
#define DEOP_NUMFMT_HPP

#include <charconv>
#include <string>

namespace deop {

// Shortest round-trip decimal form; keeps artifact bytes reproducible.
inline std::string format_double(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, ptr);
}

}  // namespace deop

#endif  // DEOP_NUMFMT_HPP
