#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace neuroauth {

enum class Errc {
    empty_password,
    unsupported_character,
    invalid_input_count,
    dimension_mismatch,
    no_convergence,
    io_failure,
    serialization_overflow,
    checksum_mismatch,
    version_unsupported,
    malformed_field,
    malformed_log_line,
    reset_denied,
    missing_token,
    invalid_argument,
};

// All failures surface as Error; code() tells callers which contract was
// violated, where() carries a character position or a 1-based line number
// when the failure is tied to one.
class Error : public std::runtime_error {
public:
    static constexpr std::size_t kNoPosition = static_cast<std::size_t>(-1);

    Error(Errc code, const std::string& message, std::size_t where = kNoPosition)
        : std::runtime_error(message), code_(code), where_(where) {}

    Errc code() const noexcept { return code_; }
    std::size_t where() const noexcept { return where_; }

private:
    Errc code_;
    std::size_t where_;
};

[[noreturn]] inline void raise(Errc code, const std::string& message,
                               std::size_t where = Error::kNoPosition) {
    throw Error(code, message, where);
}

} // namespace neuroauth
