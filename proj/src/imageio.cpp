#include "sbb/imageio.hpp"

#include <algorithm>
#include <fstream>
#include <string>

#include "sbb/error.hpp"

namespace sbb {

namespace {

constexpr std::int64_t kMaxDimension = 1 << 20;

struct HeaderScanner {
    std::span<const std::uint8_t> data;
    std::size_t pos = 0;

    bool eof() const { return pos >= data.size(); }
    std::uint8_t peek() const { return data[pos]; }

    static bool is_space(std::uint8_t c) {
        return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
    }

    void skip_space_and_comments() {
        while (!eof()) {
            if (is_space(peek())) {
                ++pos;
            } else if (peek() == '#') {
                while (!eof() && peek() != '\n') ++pos;
            } else {
                break;
            }
        }
    }

    std::int64_t read_uint() {
        skip_space_and_comments();
        if (eof() || peek() < '0' || peek() > '9')
            throw Error(ErrorCode::MalformedHeader, "expected an unsigned integer");
        std::int64_t value = 0;
        while (!eof() && peek() >= '0' && peek() <= '9') {
            value = value * 10 + (peek() - '0');
            if (value > kMaxDimension * 256)
                throw Error(ErrorCode::MalformedHeader, "header value out of range");
            ++pos;
        }
        return value;
    }
};

} // namespace

ImageFormat image_format(const RasterImage& image) {
    return image.channels == 3 ? ImageFormat::Ppm : ImageFormat::Pgm;
}

std::string_view format_extension(ImageFormat format) {
    return format == ImageFormat::Ppm ? "ppm" : "pgm";
}

RasterImage read_image(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P')
        throw Error(ErrorCode::UnsupportedFormat, "not a binary PGM/PPM file");
    int channels;
    if (bytes[1] == '5')
        channels = 1;
    else if (bytes[1] == '6')
        channels = 3;
    else
        throw Error(ErrorCode::UnsupportedFormat,
                    "unsupported magic P" + std::string(1, static_cast<char>(bytes[1])));

    HeaderScanner scan{bytes, 2};
    if (scan.eof() || (!HeaderScanner::is_space(scan.peek()) && scan.peek() != '#'))
        throw Error(ErrorCode::MalformedHeader, "magic not followed by whitespace");

    const std::int64_t width = scan.read_uint();
    const std::int64_t height = scan.read_uint();
    const std::int64_t maxval = scan.read_uint();
    if (width < 1 || height < 1 || width > kMaxDimension || height > kMaxDimension)
        throw Error(ErrorCode::MalformedHeader, "bad image dimensions " +
                                                    std::to_string(width) + "x" +
                                                    std::to_string(height));
    if (maxval != 255)
        throw Error(ErrorCode::UnsupportedFormat,
                    "maxval must be 255, got " + std::to_string(maxval));

    // exactly one whitespace byte separates the header from the samples
    if (scan.eof() || !HeaderScanner::is_space(scan.peek()))
        throw Error(ErrorCode::MalformedHeader, "missing whitespace after maxval");
    ++scan.pos;

    const std::size_t needed =
        static_cast<std::size_t>(width) * static_cast<std::size_t>(height) * channels;
    if (bytes.size() - scan.pos < needed)
        throw Error(ErrorCode::TruncatedData,
                    "need " + std::to_string(needed) + " sample bytes, have " +
                        std::to_string(bytes.size() - scan.pos));

    RasterImage image(static_cast<int>(width), static_cast<int>(height), channels);
    std::copy_n(bytes.begin() + scan.pos, needed, image.samples.begin());
    return image;
}

std::vector<std::uint8_t> write_image(const RasterImage& image) {
    const std::string header =
        std::string(image.channels == 3 ? "P6" : "P5") + "\n" +
        std::to_string(image.width) + " " + std::to_string(image.height) + "\n255\n";
    std::vector<std::uint8_t> out;
    out.reserve(header.size() + image.samples.size());
    out.insert(out.end(), header.begin(), header.end());
    out.insert(out.end(), image.samples.begin(), image.samples.end());
    return out;
}

RasterImage load_image_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::IoFailure, "cannot open " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    if (in.bad())
        throw Error(ErrorCode::IoFailure, "cannot read " + path.string());
    return read_image(bytes);
}

void save_image_file(const std::filesystem::path& path, const RasterImage& image) {
    const auto bytes = write_image(image);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw Error(ErrorCode::IoFailure, "cannot open " + path.string() + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out)
        throw Error(ErrorCode::IoFailure, "cannot write " + path.string());
}

std::string_view payload_extension(std::span<const std::uint8_t> bytes) {
    if (bytes.size() >= 2 && bytes[0] == 'P') {
        if (bytes[1] == '5') return "pgm";
        if (bytes[1] == '6') return "ppm";
    }
    return "bin";
}

} // namespace sbb
