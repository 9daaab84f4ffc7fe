#include <doctest.h>

#include <random>

#include "sbb/error.hpp"
#include "sbb/key.hpp"

using namespace sbb;

namespace {

StegoKey parse4(std::uint8_t a, std::uint8_t b, std::uint8_t c, std::uint8_t d) {
    const std::array<std::uint8_t, 4> bytes{a, b, c, d};
    return parse_key(bytes);
}

} // namespace

TEST_CASE("parse_key extracts rows, cols and MSB-first pattern") {
    const StegoKey key = parse4(0x02, 0x03, 0xA0, 0x00);
    CHECK(key.rows == 2);
    CHECK(key.cols == 3);
    CHECK(key.pattern == 0xA000);
    CHECK(key.pattern_bit(0) == 1);
    CHECK(key.pattern_bit(1) == 0);
    CHECK(key.pattern_bit(2) == 1);
    for (int i = 3; i < 16; ++i) CHECK(key.pattern_bit(i) == 0);
}

TEST_CASE("parse_key accepts the minimal key") {
    const StegoKey key = parse4(0x01, 0x01, 0x00, 0x00);
    CHECK(key.rows == 1);
    CHECK(key.cols == 1);
    CHECK(key.pattern == 0);
}

TEST_CASE("parse_key rejects a zero dimension") {
    CHECK_THROWS_AS(parse4(0x00, 0x05, 0xFF, 0xFF), Error);
    CHECK_THROWS_AS(parse4(0x05, 0x00, 0xFF, 0xFF), Error);
    try {
        parse4(0x00, 0x05, 0xFF, 0xFF);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::KeyInvalid);
    }
}

TEST_CASE("parse_key rejects wrong byte counts") {
    const std::array<std::uint8_t, 3> three{1, 1, 1};
    CHECK_THROWS_AS(parse_key(three), Error);
    const std::array<std::uint8_t, 5> five{1, 1, 1, 1, 1};
    CHECK_THROWS_AS(parse_key(five), Error);
}

TEST_CASE("pattern bit indexing pins the MSB and LSB ends") {
    CHECK(parse4(9, 9, 0x80, 0x00).pattern_bit(0) == 1);
    for (int i = 1; i < 16; ++i) CHECK(parse4(9, 9, 0x80, 0x00).pattern_bit(i) == 0);
    CHECK(parse4(9, 9, 0x00, 0x01).pattern_bit(15) == 1);
    for (int i = 0; i < 15; ++i) CHECK(parse4(9, 9, 0x00, 0x01).pattern_bit(i) == 0);
}

TEST_CASE("serialize_key inverts parse_key") {
    CHECK(serialize_key(StegoKey{2, 3, 0xA000}) ==
          std::array<std::uint8_t, 4>{0x02, 0x03, 0xA0, 0x00});
    CHECK(serialize_key(StegoKey{255, 255, 0xFFFF}) ==
          std::array<std::uint8_t, 4>{0xFF, 0xFF, 0xFF, 0xFF});
    CHECK(serialize_key(StegoKey{1, 1, 0x0000}) ==
          std::array<std::uint8_t, 4>{0x01, 0x01, 0x00, 0x00});
}

TEST_CASE("serialize(parse(b)) == b for random valid keys") {
    std::mt19937 rng(101);
    for (int trial = 0; trial < 10000; ++trial) {
        const std::array<std::uint8_t, 4> bytes{
            static_cast<std::uint8_t>(rng() % 255 + 1),
            static_cast<std::uint8_t>(rng() % 255 + 1),
            static_cast<std::uint8_t>(rng() & 0xFF),
            static_cast<std::uint8_t>(rng() & 0xFF),
        };
        REQUIRE(serialize_key(parse_key(bytes)) == bytes);
    }
}

TEST_CASE("generate_key passes geometry through and validates range") {
    std::mt19937 rng(7);
    const StegoKey key = generate_key(16, 16, rng);
    CHECK(key.rows == 16);
    CHECK(key.cols == 16);

    std::mt19937 any(0);
    CHECK_THROWS_AS(generate_key(0, 16, any), Error);
    CHECK_THROWS_AS(generate_key(16, 0, any), Error);
    CHECK_THROWS_AS(generate_key(256, 16, any), Error);
    CHECK_THROWS_AS(generate_key(16, 300, any), Error);
}

TEST_CASE("different seeds change only the pattern") {
    std::mt19937 rng_a(1), rng_b(2);
    const StegoKey a = generate_key(16, 16, rng_a);
    const StegoKey b = generate_key(16, 16, rng_b);
    CHECK(a.rows == b.rows);
    CHECK(a.cols == b.cols);
    CHECK(a.pattern != b.pattern);

    std::mt19937 rng_a2(1);
    CHECK(generate_key(16, 16, rng_a2) == a); // same seed reproduces the key
}

TEST_CASE("hex form round-trips and is case-insensitive on input") {
    const StegoKey key = key_from_hex("1010a000");
    CHECK(key.rows == 16);
    CHECK(key.cols == 16);
    CHECK(key.pattern == 0xA000);
    CHECK(key_to_hex(key) == "1010a000");
    CHECK(key_from_hex("1010A000") == key);

    CHECK_THROWS_AS(key_from_hex("1010a00"), Error);
    CHECK_THROWS_AS(key_from_hex("1010a0000"), Error);
    CHECK_THROWS_AS(key_from_hex("1010a00g"), Error);
    CHECK_THROWS_AS(key_from_hex("0010a000"), Error); // zero rows
}
