#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sbb/grid.hpp"
#include "sbb/image.hpp"
#include "sbb/key.hpp"

namespace sbb {

// One image's worth of hidden data. Serialized layout, one bit per grid
// block, blocks row-major, bytes MSB-first:
//
//   magic 0xA5 | frame_index u8 | total_frames u8 | payload_length u16 BE | payload
//
struct MessageFrame {
    std::uint8_t frame_index = 0;
    std::uint8_t total_frames = 1;
    std::vector<std::uint8_t> payload;

    bool operator==(const MessageFrame&) const = default;
};

inline constexpr std::uint8_t kFrameMagic = 0xA5;
inline constexpr int kFrameHeaderBits = 40;
inline constexpr int kDefaultRgbChannel = 2; // blue

// Bit-plane carrying the hidden bit at a given in-block pixel position:
// plane 0 (first LSB) where the pattern bit is 0, plane 1 (second LSB)
// where it is 1. Pattern bits are consumed MSB-first and cycle with
// period 16, restarting at every block.
int select_plane(std::uint16_t pattern, int position);

// One data bit written redundantly into every sample of a block.
std::vector<std::uint8_t> embed_bit_in_block(std::vector<std::uint8_t> pixels,
                                             std::uint16_t pattern, int data_bit);

// Majority vote over the designated bits; ties decode to 1.
int extract_bit_from_block(std::span<const std::uint8_t> pixels, std::uint16_t pattern);

std::vector<std::uint8_t> bits_from_bytes(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> bytes_from_bits(std::span<const std::uint8_t> bits);

// Serialized frame as a 0/1 sequence, header first.
std::vector<std::uint8_t> frame_bits(const MessageFrame& frame);

// `channel` picks the designated RGB channel; grayscale covers always use
// their only channel. Samples outside covered blocks, beyond the frame's
// bit count, or in other channels are never modified.
RasterImage embed_frame(const RasterImage& cover, const StegoKey& key,
                        const MessageFrame& frame, int channel = kDefaultRgbChannel);
MessageFrame extract_frame(const RasterImage& stego, const StegoKey& key,
                           int channel = kDefaultRgbChannel);

// Frames required for a message of the given size, accounting for the
// one-frame minimum of an empty message.
std::size_t frames_needed(const StegoKey& key, std::size_t message_bytes);

// Splits the message across covers[0..n) and leaves the rest untouched.
std::vector<RasterImage> embed_message(std::vector<RasterImage> covers,
                                       const StegoKey& key,
                                       std::span<const std::uint8_t> message,
                                       int channel = kDefaultRgbChannel);

// Accepts frames in any order; the index set must be complete and agree
// on a single total_frames value.
std::vector<std::uint8_t> extract_message(std::span<const RasterImage> stegos,
                                          const StegoKey& key,
                                          int channel = kDefaultRgbChannel);

} // namespace sbb
