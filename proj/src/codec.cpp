#include "sbb/codec.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "sbb/error.hpp"
#include "sbb/metrics.hpp"

namespace sbb {

namespace {

void check_image(const RasterImage& image) {
    if (image.channels != 1 && image.channels != 3)
        throw Error(ErrorCode::InvalidArgument,
                    "image must have 1 or 3 channels, got " + std::to_string(image.channels));
    const std::size_t expected = static_cast<std::size_t>(image.width) *
                                 static_cast<std::size_t>(image.height) * image.channels;
    if (image.width < 1 || image.height < 1 || image.samples.size() != expected)
        throw Error(ErrorCode::InvalidArgument, "image dimensions do not match sample count");
}

int effective_channel(const RasterImage& image, int channel) {
    if (image.channels == 1) return 0;
    if (channel < 0 || channel >= image.channels)
        throw Error(ErrorCode::InvalidArgument,
                    "channel " + std::to_string(channel) + " not in 0.." +
                        std::to_string(image.channels - 1));
    return channel;
}

void check_frame(const MessageFrame& frame) {
    if (frame.total_frames == 0 || frame.frame_index >= frame.total_frames)
        throw Error(ErrorCode::InvalidArgument,
                    "frame index " + std::to_string(frame.frame_index) +
                        " not below total " + std::to_string(frame.total_frames));
}

void push_byte_bits(std::vector<std::uint8_t>& bits, std::uint8_t byte) {
    for (int i = 7; i >= 0; --i) bits.push_back((byte >> i) & 1);
}

} // namespace

int select_plane(std::uint16_t pattern, int position) {
    return (pattern >> (15 - (position % 16))) & 1;
}

std::vector<std::uint8_t> embed_bit_in_block(std::vector<std::uint8_t> pixels,
                                             std::uint16_t pattern, int data_bit) {
    if (pixels.empty())
        throw Error(ErrorCode::InvalidArgument, "block must be nonempty");
    if (data_bit != 0 && data_bit != 1)
        throw Error(ErrorCode::InvalidArgument, "data bit must be 0 or 1");
    for (std::size_t p = 0; p < pixels.size(); ++p) {
        const int plane = select_plane(pattern, static_cast<int>(p));
        const std::uint8_t mask = static_cast<std::uint8_t>(1u << plane);
        pixels[p] = static_cast<std::uint8_t>((pixels[p] & ~mask) |
                                              (data_bit ? mask : 0));
    }
    return pixels;
}

int extract_bit_from_block(std::span<const std::uint8_t> pixels, std::uint16_t pattern) {
    if (pixels.empty())
        throw Error(ErrorCode::InvalidArgument, "block must be nonempty");
    std::size_t ones = 0;
    for (std::size_t p = 0; p < pixels.size(); ++p) {
        const int plane = select_plane(pattern, static_cast<int>(p));
        ones += (pixels[p] >> plane) & 1;
    }
    return 2 * ones >= pixels.size() ? 1 : 0; // ties decode to 1
}

std::vector<std::uint8_t> bits_from_bytes(std::span<const std::uint8_t> bytes) {
    std::vector<std::uint8_t> bits;
    bits.reserve(bytes.size() * 8);
    for (std::uint8_t b : bytes) push_byte_bits(bits, b);
    return bits;
}

std::vector<std::uint8_t> bytes_from_bits(std::span<const std::uint8_t> bits) {
    if (bits.size() % 8 != 0)
        throw Error(ErrorCode::InvalidArgument, "bit count must be a multiple of 8");
    std::vector<std::uint8_t> bytes;
    bytes.reserve(bits.size() / 8);
    for (std::size_t i = 0; i < bits.size(); i += 8) {
        std::uint8_t b = 0;
        for (int j = 0; j < 8; ++j) b = static_cast<std::uint8_t>((b << 1) | (bits[i + j] & 1));
        bytes.push_back(b);
    }
    return bytes;
}

std::vector<std::uint8_t> frame_bits(const MessageFrame& frame) {
    check_frame(frame);
    if (frame.payload.size() > 0xFFFF)
        throw Error(ErrorCode::CapacityExceeded,
                    "payload of " + std::to_string(frame.payload.size()) +
                        " bytes exceeds the 16-bit length field");
    std::vector<std::uint8_t> bits;
    bits.reserve(kFrameHeaderBits + frame.payload.size() * 8);
    push_byte_bits(bits, kFrameMagic);
    push_byte_bits(bits, frame.frame_index);
    push_byte_bits(bits, frame.total_frames);
    push_byte_bits(bits, static_cast<std::uint8_t>(frame.payload.size() >> 8));
    push_byte_bits(bits, static_cast<std::uint8_t>(frame.payload.size() & 0xFF));
    for (std::uint8_t b : frame.payload) push_byte_bits(bits, b);
    return bits;
}

RasterImage embed_frame(const RasterImage& cover, const StegoKey& key,
                        const MessageFrame& frame, int channel) {
    check_image(cover);
    const int ch = effective_channel(cover, channel);
    const BlockGrid grid = make_grid(cover.width, cover.height, key);
    const auto bits = frame_bits(frame);
    if (bits.size() > static_cast<std::size_t>(grid.block_count()))
        throw Error(ErrorCode::CapacityExceeded,
                    std::to_string(bits.size()) + " frame bits exceed " +
                        std::to_string(grid.block_count()) + " blocks");

    RasterImage stego = cover;
    for (std::size_t t = 0; t < bits.size(); ++t) {
        const std::uint8_t data_bit = bits[t];
        int pos = 0;
        for_each_block_pixel(grid, static_cast<int>(t), [&](int x, int y) {
            const int plane = select_plane(key.pattern, pos++);
            const std::uint8_t mask = static_cast<std::uint8_t>(1u << plane);
            std::uint8_t& s = stego.at(x, y, ch);
            s = static_cast<std::uint8_t>((s & ~mask) | (data_bit ? mask : 0));
        });
    }
    return stego;
}

MessageFrame extract_frame(const RasterImage& stego, const StegoKey& key, int channel) {
    check_image(stego);
    const int ch = effective_channel(stego, channel);
    const BlockGrid grid = make_grid(stego.width, stego.height, key);
    const int blocks = grid.block_count();

    auto read_block_bit = [&](int t) {
        std::size_t ones = 0;
        int pos = 0;
        for_each_block_pixel(grid, t, [&](int x, int y) {
            const int plane = select_plane(key.pattern, pos++);
            ones += (stego.at(x, y, ch) >> plane) & 1;
        });
        return 2 * ones >= static_cast<std::size_t>(grid.block_pixel_count()) ? 1 : 0;
    };
    auto read_byte = [&](int first_block) {
        std::uint8_t b = 0;
        for (int i = 0; i < 8; ++i)
            b = static_cast<std::uint8_t>((b << 1) | read_block_bit(first_block + i));
        return b;
    };

    if (blocks < 8)
        throw Error(ErrorCode::TruncatedFrame, "grid too small for the frame magic");
    const std::uint8_t magic = read_byte(0);
    if (magic != kFrameMagic)
        throw Error(ErrorCode::BadMagic, "wrong key or not a stego image");
    if (blocks < kFrameHeaderBits)
        throw Error(ErrorCode::TruncatedFrame, "grid too small for the frame header");

    MessageFrame frame;
    frame.frame_index = read_byte(8);
    frame.total_frames = read_byte(16);
    const std::size_t payload_len =
        (static_cast<std::size_t>(read_byte(24)) << 8) | read_byte(32);
    if (kFrameHeaderBits + payload_len * 8 > static_cast<std::size_t>(blocks))
        throw Error(ErrorCode::TruncatedFrame,
                    "declared payload of " + std::to_string(payload_len) +
                        " bytes exceeds the remaining blocks");
    frame.payload.reserve(payload_len);
    for (std::size_t i = 0; i < payload_len; ++i)
        frame.payload.push_back(read_byte(kFrameHeaderBits + static_cast<int>(i) * 8));
    return frame;
}

std::size_t frames_needed(const StegoKey& key, std::size_t message_bytes) {
    const std::size_t capacity = static_cast<std::size_t>(frame_capacity(key));
    if (capacity == 0)
        throw Error(ErrorCode::CapacityExceeded,
                    "a " + std::to_string(key.rows) + "x" + std::to_string(key.cols) +
                        " grid cannot hold the header plus one payload byte");
    const std::size_t frames =
        message_bytes == 0 ? 1 : (message_bytes + capacity - 1) / capacity;
    if (frames > 255)
        throw Error(ErrorCode::MessageTooLarge,
                    std::to_string(message_bytes) + " bytes need " +
                        std::to_string(frames) + " frames, limit is 255");
    return frames;
}

std::vector<RasterImage> embed_message(std::vector<RasterImage> covers,
                                       const StegoKey& key,
                                       std::span<const std::uint8_t> message,
                                       int channel) {
    const std::size_t frames = frames_needed(key, message.size());
    if (frames > covers.size())
        throw Error(ErrorCode::NotEnoughCovers,
                    std::to_string(frames) + " frames needed, " +
                        std::to_string(covers.size()) + " covers supplied");
    const std::size_t capacity = static_cast<std::size_t>(frame_capacity(key));
    for (std::size_t i = 0; i < frames; ++i) {
        MessageFrame frame;
        frame.frame_index = static_cast<std::uint8_t>(i);
        frame.total_frames = static_cast<std::uint8_t>(frames);
        const std::size_t begin = i * capacity;
        const std::size_t len = std::min(capacity, message.size() - begin);
        frame.payload.assign(message.begin() + begin, message.begin() + begin + len);
        covers[i] = embed_frame(covers[i], key, frame, channel);
    }
    return covers;
}

std::vector<std::uint8_t> extract_message(std::span<const RasterImage> stegos,
                                          const StegoKey& key, int channel) {
    if (stegos.empty())
        throw Error(ErrorCode::InvalidArgument, "no stego images supplied");

    std::map<int, std::vector<std::uint8_t>> by_index;
    int total = -1;
    for (const RasterImage& stego : stegos) {
        MessageFrame frame = extract_frame(stego, key, channel);
        if (total < 0) total = frame.total_frames;
        if (frame.total_frames != total)
            throw Error(ErrorCode::ConflictingFrames,
                        "frames disagree on the total: " + std::to_string(total) +
                            " vs " + std::to_string(frame.total_frames));
        if (frame.frame_index >= total)
            throw Error(ErrorCode::ConflictingFrames,
                        "frame index " + std::to_string(frame.frame_index) +
                            " not below total " + std::to_string(total));
        if (!by_index.emplace(frame.frame_index, std::move(frame.payload)).second)
            throw Error(ErrorCode::ConflictingFrames,
                        "duplicate frame index " + std::to_string(frame.frame_index));
    }
    if (static_cast<int>(by_index.size()) < total)
        throw Error(ErrorCode::MissingFrames,
                    std::to_string(by_index.size()) + " of " + std::to_string(total) +
                        " frames present");

    std::vector<std::uint8_t> message;
    for (auto& [index, payload] : by_index)
        message.insert(message.end(), payload.begin(), payload.end());
    return message;
}

} // namespace sbb
