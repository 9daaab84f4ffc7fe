#include "sbb/key.hpp"

#include <cctype>

#include "sbb/error.hpp"

namespace sbb {

StegoKey parse_key(std::span<const std::uint8_t> bytes) {
    if (bytes.size() != 4)
        throw Error(ErrorCode::KeyInvalid, "key must be exactly 4 bytes");
    if (bytes[0] == 0 || bytes[1] == 0)
        throw Error(ErrorCode::KeyInvalid, "row and column counts must be nonzero");
    StegoKey key;
    key.rows = bytes[0];
    key.cols = bytes[1];
    key.pattern = static_cast<std::uint16_t>((bytes[2] << 8) | bytes[3]);
    return key;
}

std::array<std::uint8_t, 4> serialize_key(const StegoKey& key) {
    return {key.rows, key.cols,
            static_cast<std::uint8_t>(key.pattern >> 8),
            static_cast<std::uint8_t>(key.pattern & 0xFF)};
}

StegoKey generate_key(int rows, int cols, std::mt19937& rng) {
    if (rows < 1 || rows > 255 || cols < 1 || cols > 255)
        throw Error(ErrorCode::KeyInvalid,
                    "rows and cols must be in 1..255, got rows=" + std::to_string(rows) +
                        " cols=" + std::to_string(cols));
    StegoKey key;
    key.rows = static_cast<std::uint8_t>(rows);
    key.cols = static_cast<std::uint8_t>(cols);
    // raw engine output keeps seeded generation portable across stdlibs
    key.pattern = static_cast<std::uint16_t>(rng() & 0xFFFF);
    return key;
}

namespace {

int hex_digit(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

} // namespace

StegoKey key_from_hex(std::string_view hex) {
    if (hex.size() != 8)
        throw Error(ErrorCode::KeyInvalid, "key text must be exactly 8 hex digits");
    std::array<std::uint8_t, 4> bytes{};
    for (int i = 0; i < 4; ++i) {
        const int hi = hex_digit(hex[2 * i]);
        const int lo = hex_digit(hex[2 * i + 1]);
        if (hi < 0 || lo < 0)
            throw Error(ErrorCode::KeyInvalid, "key text contains a non-hex character");
        bytes[i] = static_cast<std::uint8_t>((hi << 4) | lo);
    }
    return parse_key(bytes);
}

std::string key_to_hex(const StegoKey& key) {
    static const char* digits = "0123456789abcdef";
    const auto bytes = serialize_key(key);
    std::string out;
    out.reserve(8);
    for (std::uint8_t b : bytes) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 0xF]);
    }
    return out;
}

} // namespace sbb
