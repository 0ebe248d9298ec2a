#include "neuroauth/codec.hpp"

#include <string>

#include "neuroauth/errors.hpp"

namespace neuroauth {

BitVector encode_password(std::string_view password) {
    if (password.empty())
        raise(Errc::empty_password, "password must contain at least one character");

    BitVector bits;
    bits.reserve(password.size() * kBitsPerChar);
    for (std::size_t pos = 0; pos < password.size(); ++pos) {
        const unsigned char c = static_cast<unsigned char>(password[pos]);
        if (c < static_cast<unsigned char>(kMinChar) || c > static_cast<unsigned char>(kMaxChar))
            raise(Errc::unsupported_character,
                  "unsupported character at position " + std::to_string(pos) +
                      " (code point " + std::to_string(c) + " outside 0x20..0x7e)",
                  pos);
        for (int bit = static_cast<int>(kBitsPerChar) - 1; bit >= 0; --bit)
            bits.push_back(static_cast<std::uint8_t>((c >> bit) & 1u));
    }
    return bits;
}

std::string decode_bits(const BitVector& bits) {
    if (bits.empty() || bits.size() % kBitsPerChar != 0)
        raise(Errc::invalid_argument,
              "bit vector length must be a positive multiple of " + std::to_string(kBitsPerChar));

    std::string out;
    out.reserve(bits.size() / kBitsPerChar);
    for (std::size_t i = 0; i < bits.size(); i += kBitsPerChar) {
        unsigned value = 0;
        for (std::size_t k = 0; k < kBitsPerChar; ++k) {
            if (bits[i + k] > 1)
                raise(Errc::invalid_argument, "bit vector elements must be 0 or 1");
            value = (value << 1) | bits[i + k];
        }
        if (value < static_cast<unsigned>(kMinChar) || value > static_cast<unsigned>(kMaxChar))
            raise(Errc::unsupported_character,
                  "decoded code point " + std::to_string(value) + " outside 0x20..0x7e",
                  i / kBitsPerChar);
        out.push_back(static_cast<char>(value));
    }
    return out;
}

std::size_t hidden_count_for(std::size_t input_count) {
    if (input_count < kBitsPerChar)
        raise(Errc::invalid_input_count,
              "input count " + std::to_string(input_count) + " is shorter than one character");
    const std::size_t rounded = (3 * input_count + 5) / 10;
    return rounded > 0 ? rounded : 1;
}

} // namespace neuroauth
