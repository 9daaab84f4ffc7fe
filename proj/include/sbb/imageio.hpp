#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string_view>
#include <vector>

#include "sbb/image.hpp"

namespace sbb {

enum class ImageFormat { Pgm, Ppm };

ImageFormat image_format(const RasterImage& image); // Pgm <-> 1 channel, Ppm <-> 3
std::string_view format_extension(ImageFormat format);

// Binary PGM ("P5") and PPM ("P6") with maxval 255 only. Header comments
// ("#" to end of line) are accepted on read, never emitted on write.
RasterImage read_image(std::span<const std::uint8_t> bytes);

// Canonical header "P5\n<w> <h>\n255\n" (or "P6"), then raw samples.
std::vector<std::uint8_t> write_image(const RasterImage& image);

RasterImage load_image_file(const std::filesystem::path& path);
void save_image_file(const std::filesystem::path& path, const RasterImage& image);

// Filename extension for arbitrary payload bytes: "pgm", "ppm" or "bin".
std::string_view payload_extension(std::span<const std::uint8_t> bytes);

} // namespace sbb
