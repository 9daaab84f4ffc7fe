#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>

namespace sbb {

// 32-bit embedding key: one byte each for the block-grid row and column
// counts, then 16 pattern bits steering the per-pixel bit-plane choice.
// Byte order is rows, cols, pattern-high, pattern-low.
struct StegoKey {
    std::uint8_t rows = 1;     // block rows, 1..255
    std::uint8_t cols = 1;     // block cols, 1..255
    std::uint16_t pattern = 0; // bit 15 carries pattern index 0

    // index 0..15, counted from the MSB of the pattern field
    int pattern_bit(int index) const { return (pattern >> (15 - index)) & 1; }

    bool operator==(const StegoKey&) const = default;
};

StegoKey parse_key(std::span<const std::uint8_t> bytes);
std::array<std::uint8_t, 4> serialize_key(const StegoKey& key);

// Geometry is explicit (it must match the cover image); only the 16
// pattern bits are drawn from the generator.
StegoKey generate_key(int rows, int cols, std::mt19937& rng);

// Canonical text form: exactly 8 hex digits, big-endian byte order,
// lowercase on output, case-insensitive on input.
StegoKey key_from_hex(std::string_view hex);
std::string key_to_hex(const StegoKey& key);

} // namespace sbb
