#pragma once

#include <charconv>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace wdn {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input text could not be parsed; carries a 1-based line number when known.
class ParseError : public Error {
public:
    ParseError(std::string msg, long line = -1)
        : Error(line >= 0 ? "line " + std::to_string(line) + ": " + msg : msg),
          line_(line) {}
    long line() const noexcept { return line_; }

private:
    long line_;
};

/// A requested configuration cannot be realized (e.g. unreachable ratio).
class InfeasibleConfig : public Error {
public:
    using Error::Error;
};

class SolverError : public Error {
public:
    using Error::Error;
};

class DataError : public Error {
public:
    using Error::Error;
};

// Shortest decimal representation that parses back to the same double.
inline std::string format_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view s, const char* what) {
    double v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw ParseError(std::string("invalid number for ") + what + ": '" + std::string(s) + "'");
    return v;
}

// FNV-1a, used for content hashes in run manifests and for seed splitting.
inline std::uint64_t fnv1a64(std::string_view data, std::uint64_t h = 0xcbf29ce484222325ull) {
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

} // namespace wdn
