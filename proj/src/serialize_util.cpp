#include "serialize_util.hpp"

#include <cmath>
#include <fstream>
#include <system_error>

namespace neuroauth::detail {

void write_checksummed_file(const std::filesystem::path& path, std::string payload) {
    // The checksum covers every byte before its own line.
    const std::uint64_t checksum = fnv1a64(payload);
    payload += "checksum ";
    payload += hex16_from_u64(checksum);
    payload += '\n';

    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            raise(Errc::io_failure, "cannot open " + tmp.string() + " for writing");
        out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
        out.flush();
        if (!out) {
            std::error_code ec;
            std::filesystem::remove(tmp, ec);
            raise(Errc::io_failure, "write failed for " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::error_code ignore;
        std::filesystem::remove(tmp, ignore);
        raise(Errc::io_failure, "rename to " + path.string() + " failed: " + ec.message());
    }
}

std::string read_checksummed_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        raise(Errc::io_failure, "cannot open " + path.string());
    std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad())
        raise(Errc::io_failure, "read failed for " + path.string());

    // Trailer: final line must be "checksum <hex16>".
    constexpr std::size_t kTrailer = 9 + 16 + 1;
    if (data.size() < kTrailer || data.back() != '\n')
        raise(Errc::checksum_mismatch, path.string() + ": missing checksum trailer");
    std::size_t line_start = data.rfind('\n', data.size() - 2);
    line_start = (line_start == std::string::npos) ? 0 : line_start + 1;
    const std::string_view last_line(data.data() + line_start, data.size() - line_start - 1);
    if (last_line.size() != 9 + 16 || last_line.substr(0, 9) != "checksum ")
        raise(Errc::checksum_mismatch, path.string() + ": missing checksum trailer");
    const auto stored = u64_from_hex16(last_line.substr(9));
    if (!stored)
        raise(Errc::checksum_mismatch, path.string() + ": unreadable checksum value");

    const std::string_view payload(data.data(), line_start);
    if (fnv1a64(payload) != *stored)
        raise(Errc::checksum_mismatch, path.string() + ": checksum does not match content");
    return std::string(payload);
}

std::optional<std::string_view> LineReader::next() {
    if (rest_.empty()) return std::nullopt;
    ++line_;
    const std::size_t nl = rest_.find('\n');
    std::string_view line;
    if (nl == std::string_view::npos) {
        line = rest_;
        rest_ = {};
    } else {
        line = rest_.substr(0, nl);
        rest_ = rest_.substr(nl + 1);
    }
    return line;
}

std::string_view expect_kv(std::optional<std::string_view> line, std::size_t line_number,
                           std::string_view key) {
    if (!line)
        malformed(line_number + 1, "unexpected end of file, expected key '" + std::string(key) + "'");
    const std::string prefix = std::string(key) + " = ";
    if (line->substr(0, prefix.size()) != prefix)
        malformed(line_number, "expected key '" + std::string(key) + "'");
    return line->substr(prefix.size());
}

double parse_hex_double_or_die(std::string_view text, std::size_t line, std::string_view key) {
    const auto value = double_from_hex16(text);
    if (!value)
        malformed(line, "key '" + std::string(key) + "' is not a 16-hex-digit float");
    if (!std::isfinite(*value))
        malformed(line, "key '" + std::string(key) + "' holds a non-finite value");
    return *value;
}

} // namespace neuroauth::detail
