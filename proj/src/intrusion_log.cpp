#include <cstdio>
#include <ctime>
#include <fstream>
#include <string>

#include "neuroauth/vault.hpp"
#include "serialize_util.hpp"

// Intrusion log: one record per line, append-only.
//   <ISO-8601 UTC timestamp> | <layer> | <attempted password, escaped> | <insertion_ms>
// The password field escapes backslash as \\, pipe as \|, and control bytes
// as \xHH, so the separators stay unambiguous and records survive arbitrary
// attempted input verbatim.

namespace neuroauth {

namespace {

std::string format_timestamp(std::chrono::system_clock::time_point tp) {
    const std::time_t t = std::chrono::system_clock::to_time_t(tp);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[80];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ", tm.tm_year + 1900,
                  tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec);
    return buf;
}

std::optional<std::chrono::system_clock::time_point> parse_timestamp(std::string_view text) {
    if (text.size() != 20 || text[4] != '-' || text[7] != '-' || text[10] != 'T' ||
        text[13] != ':' || text[16] != ':' || text[19] != 'Z')
        return std::nullopt;
    const auto num = [&](std::size_t pos, std::size_t len) -> int {
        int value = 0;
        for (std::size_t i = pos; i < pos + len; ++i) {
            if (text[i] < '0' || text[i] > '9') return -1;
            value = value * 10 + (text[i] - '0');
        }
        return value;
    };
    std::tm tm{};
    tm.tm_year = num(0, 4) - 1900;
    tm.tm_mon = num(5, 2) - 1;
    tm.tm_mday = num(8, 2);
    tm.tm_hour = num(11, 2);
    tm.tm_min = num(14, 2);
    tm.tm_sec = num(17, 2);
    if (tm.tm_mday <= 0 || tm.tm_mon < 0 || tm.tm_hour < 0 || tm.tm_min < 0 || tm.tm_sec < 0)
        return std::nullopt;
    const std::time_t t = timegm(&tm);
    if (t == static_cast<std::time_t>(-1)) return std::nullopt;
    return std::chrono::system_clock::from_time_t(t);
}

std::string escape_password(std::string_view password) {
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    out.reserve(password.size());
    for (char ch : password) {
        const unsigned char c = static_cast<unsigned char>(ch);
        if (ch == '\\') {
            out += "\\\\";
        } else if (ch == '|') {
            out += "\\|";
        } else if (c < 0x20 || c == 0x7f) {
            out += "\\x";
            out += hex[c >> 4];
            out += hex[c & 0xf];
        } else {
            out += ch;
        }
    }
    return out;
}

std::string unescape_password(std::string_view text, std::size_t line_number) {
    std::string out;
    out.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] != '\\') {
            out += text[i];
            continue;
        }
        if (i + 1 >= text.size())
            raise(Errc::malformed_log_line,
                  "line " + std::to_string(line_number) + ": dangling escape", line_number);
        const char kind = text[++i];
        if (kind == '\\' || kind == '|') {
            out += kind;
        } else if (kind == 'x') {
            if (i + 2 >= text.size())
                raise(Errc::malformed_log_line,
                      "line " + std::to_string(line_number) + ": truncated \\x escape",
                      line_number);
            const auto nibble = [&](char c) -> int {
                if (c >= '0' && c <= '9') return c - '0';
                if (c >= 'a' && c <= 'f') return c - 'a' + 10;
                return -1;
            };
            const int hi = nibble(text[i + 1]);
            const int lo = nibble(text[i + 2]);
            if (hi < 0 || lo < 0)
                raise(Errc::malformed_log_line,
                      "line " + std::to_string(line_number) + ": invalid \\x escape", line_number);
            out += static_cast<char>((hi << 4) | lo);
            i += 2;
        } else {
            raise(Errc::malformed_log_line,
                  "line " + std::to_string(line_number) + ": unknown escape '\\" +
                      std::string(1, kind) + "'",
                  line_number);
        }
    }
    return out;
}

} // namespace

std::string format_log_record(const AttemptRecord& record) {
    std::string line = format_timestamp(record.timestamp);
    line += " | ";
    line += layer_name(record.failed_layer);
    line += " | ";
    line += escape_password(record.attempted_password);
    line += " | ";
    line += std::to_string(record.insertion_ms);
    return line;
}

void append_log(const std::filesystem::path& path, std::span<const AttemptRecord> records) {
    if (records.empty()) return;
    std::ofstream out(path, std::ios::binary | std::ios::app);
    if (!out)
        raise(Errc::io_failure, "cannot open intrusion log " + path.string());
    for (const AttemptRecord& record : records)
        out << format_log_record(record) << '\n';
    out.flush();
    if (!out)
        raise(Errc::io_failure, "append failed for intrusion log " + path.string());
}

std::vector<AttemptRecord> read_log(const std::filesystem::path& path) {
    std::vector<AttemptRecord> records;
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        if (!std::filesystem::exists(path))
            return records; // a log that was never written is empty
        raise(Errc::io_failure, "cannot open intrusion log " + path.string());
    }

    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (line.empty()) continue;

        const auto bad = [&](const std::string& what) {
            raise(Errc::malformed_log_line,
                  "line " + std::to_string(line_number) + ": " + what, line_number);
        };

        const std::size_t first = line.find(" | ");
        const std::size_t second = (first == std::string::npos) ? std::string::npos
                                                                : line.find(" | ", first + 3);
        const std::size_t last = line.rfind(" | ");
        if (first == std::string::npos || second == std::string::npos || last < second + 3)
            bad("expected four ' | ' separated fields");

        AttemptRecord record;
        const auto ts = parse_timestamp(std::string_view(line).substr(0, first));
        if (!ts) bad("unreadable timestamp");
        record.timestamp = *ts;

        const auto layer =
            layer_from_name(std::string_view(line).substr(first + 3, second - first - 3));
        if (!layer) bad("unknown layer tag");
        record.failed_layer = *layer;

        // The password field never contains a bare '|', so the last separator
        // is always the one in front of insertion_ms.
        record.attempted_password = unescape_password(
            std::string_view(line).substr(second + 3, last - second - 3), line_number);

        const auto ms =
            detail::parse_uint<std::uint64_t>(std::string_view(line).substr(last + 3));
        if (!ms) bad("unreadable insertion_ms");
        record.insertion_ms = *ms;

        records.push_back(std::move(record));
    }
    if (in.bad())
        raise(Errc::io_failure, "read failed for intrusion log " + path.string());
    return records;
}

} // namespace neuroauth
