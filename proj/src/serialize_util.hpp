#pragma once

// Internal helpers shared by the file writers/readers: bit-exact hex-float
// encoding, fnv-1a/64 checksums, and the checksum-trailer framing common to
// profile, token and server files.

#include <bit>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "neuroauth/errors.hpp"

namespace neuroauth::detail {

inline std::string hex16_from_u64(std::uint64_t value) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[value & 0xf];
        value >>= 4;
    }
    return out;
}

inline std::optional<std::uint64_t> u64_from_hex16(std::string_view text) {
    if (text.size() != 16) return std::nullopt;
    std::uint64_t value = 0;
    for (char c : text) {
        value <<= 4;
        if (c >= '0' && c <= '9') value |= static_cast<std::uint64_t>(c - '0');
        else if (c >= 'a' && c <= 'f') value |= static_cast<std::uint64_t>(c - 'a' + 10);
        else return std::nullopt;
    }
    return value;
}

inline std::string hex16_from_double(double value) {
    return hex16_from_u64(std::bit_cast<std::uint64_t>(value));
}

inline std::optional<double> double_from_hex16(std::string_view text) {
    const auto bits = u64_from_hex16(text);
    if (!bits) return std::nullopt;
    return std::bit_cast<double>(*bits);
}

inline std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t hash = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 1099511628211ull;
    }
    return hash;
}

// Scientific notation with 13 significant digits, locale independent.
inline std::string format_scientific(double value) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value,
                                   std::chars_format::scientific, 12);
    (void)ec;
    return std::string(buf, end);
}

template <typename Int>
std::optional<Int> parse_uint(std::string_view text) {
    Int value{};
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) return std::nullopt;
    return value;
}

// Appends "checksum <hex16>\n" over everything already in payload and writes
// the result atomically: temp sibling first, then rename over the target.
void write_checksummed_file(const std::filesystem::path& path, std::string payload);

// Reads the file, validates the trailing checksum line, and returns the
// payload in front of it. Raises io_failure / checksum_mismatch.
std::string read_checksummed_file(const std::filesystem::path& path);

// Line-oriented reader over a validated payload; tracks 1-based line numbers
// for error reporting.
class LineReader {
public:
    explicit LineReader(std::string_view payload) : rest_(payload) {}

    // Next line without its terminator; nullopt at end of payload.
    std::optional<std::string_view> next();

    bool at_end() const { return rest_.empty(); }
    std::size_t line_number() const { return line_; } // line most recently returned

private:
    std::string_view rest_;
    std::size_t line_ = 0;
};

[[noreturn]] inline void malformed(std::size_t line, const std::string& what) {
    raise(Errc::malformed_field, "line " + std::to_string(line) + ": " + what, line);
}

// "key = value" accessor; raises malformed_field when the key differs.
std::string_view expect_kv(std::optional<std::string_view> line, std::size_t line_number,
                           std::string_view key);

double parse_hex_double_or_die(std::string_view text, std::size_t line, std::string_view key);

} // namespace neuroauth::detail
