#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace neuroauth {

// Password preprocessing: each printable ASCII character (0x20..0x7e) becomes
// its 7-bit code, most significant bit first, concatenated in character order.
inline constexpr std::size_t kBitsPerChar = 7;
inline constexpr char kMinChar = 0x20;
inline constexpr char kMaxChar = 0x7e;

using BitVector = std::vector<std::uint8_t>;

BitVector encode_password(std::string_view password);

// Inverse of encode_password; rejects bit patterns outside the printable range.
std::string decode_bits(const BitVector& bits);

// Hidden layer sizing: 30% of the input width, rounded to nearest (half up),
// never below one node. Computed in integer arithmetic so the .5 boundary is
// exact: (3n + 5) / 10.
std::size_t hidden_count_for(std::size_t input_count);

} // namespace neuroauth
