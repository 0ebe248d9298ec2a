#include <doctest.h>

#include <random>
#include <string>

#include "neuroauth/codec.hpp"
#include "neuroauth/errors.hpp"

using namespace neuroauth;

namespace {

std::string random_printable(std::mt19937_64& gen, std::size_t length) {
    std::uniform_int_distribution<int> dist(0x20, 0x7e);
    std::string out;
    out.reserve(length);
    for (std::size_t i = 0; i < length; ++i)
        out.push_back(static_cast<char>(dist(gen)));
    return out;
}

} // namespace

TEST_CASE("encode_password produces 7 bits per character, big-endian") {
    const BitVector bits = encode_password("a"); // 'a' = 97 = 1100001
    REQUIRE(bits.size() == 7);
    const BitVector expected{1, 1, 0, 0, 0, 0, 1};
    CHECK(bits == expected);

    CHECK(encode_password("neural").size() == 42);
    CHECK(encode_password("architecture").size() == 84);
}

TEST_CASE("encode_password rejects empty and out-of-range input") {
    CHECK_THROWS_WITH_AS(encode_password(""), doctest::Contains("at least one character"), Error);
    try {
        encode_password("");
        FAIL("expected error");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::empty_password);
    }

    try {
        encode_password("ab\tcd");
        FAIL("expected error");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::unsupported_character);
        CHECK(e.where() == 2);
    }

    // 0x7f (DEL) is the first code point past the accepted range.
    try {
        encode_password(std::string("ok") + '\x7f');
        FAIL("expected error");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::unsupported_character);
        CHECK(e.where() == 2);
    }

    // Bytes above 0x7f (e.g. UTF-8 continuation bytes) are rejected too.
    try {
        encode_password("caf\xc3\xa9");
        FAIL("expected error");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::unsupported_character);
        CHECK(e.where() == 3);
    }
}

TEST_CASE("hidden_count_for matches the 30% half-up rule") {
    CHECK(hidden_count_for(42) == 13);
    CHECK(hidden_count_for(84) == 25);
    CHECK(hidden_count_for(10) == 3);
    CHECK(hidden_count_for(7) == 2);   // 2.1 rounds down
    CHECK(hidden_count_for(15) == 5);  // 4.5 rounds up, exactly on the boundary
    CHECK(hidden_count_for(25) == 8);  // 7.5 rounds up
    CHECK(hidden_count_for(9) == 3);   // 2.7 rounds up

    try {
        hidden_count_for(6);
        FAIL("expected error");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::invalid_input_count);
    }
}

TEST_CASE("encode/decode round-trips random printable passwords") {
    std::mt19937_64 gen(20260808);
    std::uniform_int_distribution<std::size_t> length_dist(1, 64);
    for (int round = 0; round < 200; ++round) {
        const std::string password = random_printable(gen, length_dist(gen));
        const BitVector bits = encode_password(password);
        CHECK(bits.size() == 7 * password.size());
        for (std::uint8_t bit : bits)
            REQUIRE(bit <= 1);
        CHECK(decode_bits(bits) == password);
    }
}

TEST_CASE("decode_bits rejects malformed vectors") {
    CHECK_THROWS_AS(decode_bits(BitVector{}), Error);
    CHECK_THROWS_AS(decode_bits(BitVector{1, 0, 1}), Error);
    CHECK_THROWS_AS(decode_bits(BitVector{0, 0, 0, 0, 1, 1, 1}), Error); // 0x07, control
}
