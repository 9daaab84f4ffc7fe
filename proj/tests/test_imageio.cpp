#include <doctest.h>

#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "sbb/error.hpp"
#include "sbb/imageio.hpp"

using namespace sbb;

namespace {

std::vector<std::uint8_t> bytes_of(const std::string& header,
                                   std::initializer_list<std::uint8_t> samples) {
    std::vector<std::uint8_t> out(header.begin(), header.end());
    out.insert(out.end(), samples.begin(), samples.end());
    return out;
}

std::vector<std::uint8_t> slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

RasterImage random_image(std::mt19937& rng) {
    const int w = int(rng() % 16) + 1;
    const int h = int(rng() % 16) + 1;
    const int ch = (rng() & 1) ? 3 : 1;
    RasterImage image(w, h, ch);
    for (auto& s : image.samples) s = std::uint8_t(rng());
    return image;
}

} // namespace

TEST_CASE("read_image parses binary PGM") {
    const auto image = read_image(bytes_of("P5\n2 2\n255\n", {0, 128, 255, 7}));
    CHECK(image.width == 2);
    CHECK(image.height == 2);
    CHECK(image.channels == 1);
    CHECK(image.samples == std::vector<std::uint8_t>{0, 128, 255, 7});
}

TEST_CASE("read_image parses binary PPM") {
    const auto image = read_image(bytes_of("P6\n1 1\n255\n", {255, 0, 0}));
    CHECK(image.width == 1);
    CHECK(image.height == 1);
    CHECK(image.channels == 3);
    CHECK(image.samples == std::vector<std::uint8_t>{255, 0, 0});
}

TEST_CASE("read_image flags short sample data") {
    CHECK_THROWS_AS(read_image(bytes_of("P5\n2 2\n255\n", {1, 2, 3})), Error);
    try {
        read_image(bytes_of("P5\n2 2\n255\n", {1, 2, 3}));
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::TruncatedData);
    }
}

TEST_CASE("read_image accepts header comments and loose whitespace") {
    const auto image =
        read_image(bytes_of("P5 # a cover\n# another line\n 2\t2 # dims\n255\n", {9, 8, 7, 6}));
    CHECK(image.width == 2);
    CHECK(image.height == 2);
    CHECK(image.samples == std::vector<std::uint8_t>{9, 8, 7, 6});
}

TEST_CASE("read_image rejects other formats and maxvals") {
    auto code_of = [](const std::vector<std::uint8_t>& bytes) {
        try {
            read_image(bytes);
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::InvalidArgument;
    };
    CHECK(code_of(bytes_of("P4\n2 2\n255\n", {0, 0, 0, 0})) == ErrorCode::UnsupportedFormat);
    CHECK(code_of(bytes_of("P5\n2 2\n254\n", {0, 0, 0, 0})) == ErrorCode::UnsupportedFormat);
    CHECK(code_of(bytes_of("P5\n2 2\n65535\n", {0, 0, 0, 0})) == ErrorCode::UnsupportedFormat);
    CHECK(code_of(bytes_of("XX\n2 2\n255\n", {0, 0, 0, 0})) == ErrorCode::UnsupportedFormat);
    CHECK(code_of(bytes_of("P5\n0 2\n255\n", {})) == ErrorCode::MalformedHeader);
    CHECK(code_of(bytes_of("P5\n2 x\n255\n", {0, 0, 0, 0})) == ErrorCode::MalformedHeader);
    CHECK(code_of(bytes_of("P5\n2 2\n", {})) == ErrorCode::MalformedHeader);
    CHECK(code_of(bytes_of("P57 7 255 ", {})) == ErrorCode::MalformedHeader);
}

TEST_CASE("write_image emits the canonical header") {
    RasterImage gray(1, 1, 1);
    gray.samples = {42};
    CHECK(write_image(gray) == bytes_of("P5\n1 1\n255\n", {42}));

    RasterImage rgb(2, 1, 3);
    rgb.samples = {1, 2, 3, 4, 5, 6};
    CHECK(write_image(rgb) == bytes_of("P6\n2 1\n255\n", {1, 2, 3, 4, 5, 6}));
}

TEST_CASE("write_image output matches the committed golden bytes") {
    RasterImage gray(2, 3, 1);
    gray.samples = {0, 64, 128, 192, 255, 7};
    CHECK(write_image(gray) == slurp(std::string(SBB_GOLDEN_DIR) + "/gradient_2x3.pgm"));

    RasterImage rgb(3, 2, 3);
    rgb.samples = {255, 0, 0, 0, 255, 0, 0, 0, 255, 1, 2, 3, 4, 5, 6, 7, 8, 9};
    CHECK(write_image(rgb) == slurp(std::string(SBB_GOLDEN_DIR) + "/primary_3x2.ppm"));
}

TEST_CASE("read(write(x)) is the identity") {
    std::mt19937 rng(404);
    for (int trial = 0; trial < 120; ++trial) {
        const RasterImage image = random_image(rng);
        REQUIRE(read_image(write_image(image)) == image);
    }
}

TEST_CASE("write(read(b)) canonicalizes the header but keeps samples") {
    const auto noisy = bytes_of("P5  # comment\n\t2 2\r\n 255\t", {10, 20, 30, 40});
    const auto canonical = write_image(read_image(noisy));
    CHECK(canonical == bytes_of("P5\n2 2\n255\n", {10, 20, 30, 40}));
}

TEST_CASE("payload_extension sniffs image magic") {
    CHECK(payload_extension(bytes_of("P5\n1 1\n255\n", {0})) == "pgm");
    CHECK(payload_extension(bytes_of("P6\n1 1\n255\n", {0, 0, 0})) == "ppm");
    const std::vector<std::uint8_t> junk{0xDE, 0xAD};
    CHECK(payload_extension(junk) == "bin");
}

TEST_CASE("image files save and load through the filesystem") {
    std::mt19937 rng(17);
    const RasterImage image = random_image(rng);
    const auto path = std::filesystem::temp_directory_path() / "sbb_io_test.pnm";
    save_image_file(path, image);
    CHECK(load_image_file(path) == image);
    std::filesystem::remove(path);
    CHECK_THROWS_AS(load_image_file(path), Error);
}
