#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "sbb/error.hpp"
#include "sbb/metrics.hpp"

using namespace sbb;

namespace {

RasterImage constant_image(int w, int h, int ch, std::uint8_t value) {
    RasterImage image(w, h, ch);
    std::fill(image.samples.begin(), image.samples.end(), value);
    return image;
}

} // namespace

TEST_CASE("compare of identical images is mse 0 / infinite psnr") {
    const RasterImage a = constant_image(8, 8, 1, 42);
    const QualityReport report = compare(a, a);
    CHECK(report.mse == 0.0);
    CHECK(std::isinf(report.psnr_db));
    CHECK(report.max_abs_diff == 0);
    CHECK(report.identical());
    CHECK(report.to_record() == "mse=0 psnr_db=inf max_abs_diff=0");
}

TEST_CASE("compare with every sample off by two hits the closed-form floor") {
    const RasterImage a = constant_image(16, 16, 3, 100);
    const RasterImage b = constant_image(16, 16, 3, 102);
    const QualityReport report = compare(a, b);
    CHECK(report.mse == doctest::Approx(4.0));
    CHECK(report.psnr_db == doctest::Approx(10.0 * std::log10(255.0 * 255.0 / 4.0)));
    CHECK(report.psnr_db == doctest::Approx(42.11).epsilon(0.001));
    CHECK(report.max_abs_diff == 2);
}

TEST_CASE("compare of maximally different single samples") {
    const RasterImage a = constant_image(1, 1, 1, 0);
    const RasterImage b = constant_image(1, 1, 1, 255);
    const QualityReport report = compare(a, b);
    CHECK(report.mse == doctest::Approx(65025.0));
    CHECK(report.psnr_db == doctest::Approx(0.0));
    CHECK(report.max_abs_diff == 255);
}

TEST_CASE("compare rejects shape mismatches") {
    CHECK_THROWS_AS(compare(RasterImage(2, 2, 1), RasterImage(2, 3, 1)), Error);
    CHECK_THROWS_AS(compare(RasterImage(2, 2, 1), RasterImage(2, 2, 3)), Error);
}

TEST_CASE("compare is symmetric") {
    std::mt19937 rng(5);
    RasterImage a(9, 7, 3), b(9, 7, 3);
    for (auto& s : a.samples) s = std::uint8_t(rng());
    for (auto& s : b.samples) s = std::uint8_t(rng());
    const QualityReport ab = compare(a, b);
    const QualityReport ba = compare(b, a);
    CHECK(ab.mse == ba.mse);
    CHECK(ab.max_abs_diff == ba.max_abs_diff);
}

TEST_CASE("bit_error_rate counts differing positions") {
    const std::vector<std::uint8_t> zeros(8, 0), ones(8, 1);
    CHECK(bit_error_rate(zeros, zeros) == 0.0);
    CHECK(bit_error_rate(zeros, ones) == 1.0);

    std::vector<std::uint8_t> two_flips(zeros);
    two_flips[1] = 1;
    two_flips[6] = 1;
    CHECK(bit_error_rate(zeros, two_flips) == doctest::Approx(0.25));
}

TEST_CASE("bit_error_rate rejects bad inputs") {
    const std::vector<std::uint8_t> a(4, 0), b(5, 0), empty;
    CHECK_THROWS_AS(bit_error_rate(a, b), Error);
    CHECK_THROWS_AS(bit_error_rate(empty, empty), Error);
    try {
        bit_error_rate(empty, empty);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::EmptyInput);
    }
}

TEST_CASE("frame_capacity follows the header-plus-payload formula") {
    CHECK(frame_capacity(StegoKey{16, 16, 0}) == 27);
    CHECK(frame_capacity(StegoKey{7, 6, 0}) == 0);
    CHECK(frame_capacity(StegoKey{255, 255, 0}) == 8123);
    CHECK(frame_capacity(StegoKey{1, 1, 0}) == 0);
}

TEST_CASE("frame_capacity is monotone in rows and cols") {
    for (int rows = 1; rows <= 64; rows += 3)
        for (int cols = 1; cols <= 64; cols += 3) {
            const int base = frame_capacity(StegoKey{std::uint8_t(rows), std::uint8_t(cols), 0});
            CHECK(frame_capacity(StegoKey{std::uint8_t(rows + 1), std::uint8_t(cols), 0}) >= base);
            CHECK(frame_capacity(StegoKey{std::uint8_t(rows), std::uint8_t(cols + 1), 0}) >= base);
        }
}
