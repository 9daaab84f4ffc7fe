#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace sbb {

// 8-bit raster, row-major, channel-interleaved. channels is 1 (grayscale)
// or 3 (RGB).
struct RasterImage {
    int width = 0;
    int height = 0;
    int channels = 1;
    std::vector<std::uint8_t> samples;

    RasterImage() = default;
    RasterImage(int w, int h, int ch)
        : width(w), height(h), channels(ch),
          samples(static_cast<std::size_t>(w) * static_cast<std::size_t>(h) * ch) {}

    std::size_t sample_index(int x, int y, int c) const {
        return (static_cast<std::size_t>(y) * width + x) * channels + c;
    }
    std::uint8_t& at(int x, int y, int c = 0) { return samples[sample_index(x, y, c)]; }
    std::uint8_t at(int x, int y, int c = 0) const { return samples[sample_index(x, y, c)]; }

    bool same_shape(const RasterImage& o) const {
        return width == o.width && height == o.height && channels == o.channels;
    }

    bool operator==(const RasterImage&) const = default;
};

} // namespace sbb
