#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "sbb/image.hpp"
#include "sbb/key.hpp"

namespace sbb {

struct QualityReport {
    double mse = 0.0;
    double psnr_db = 0.0; // +infinity exactly when mse == 0
    int max_abs_diff = 0;

    bool identical() const { return max_abs_diff == 0; }

    // single-line record: "mse=<v> psnr_db=<v|inf> max_abs_diff=<n>"
    std::string to_record() const;
};

// MSE/PSNR over all samples of all channels.
QualityReport compare(const RasterImage& a, const RasterImage& b);

// Fraction of differing positions; inputs are 0/1 bit sequences.
double bit_error_rate(std::span<const std::uint8_t> sent,
                      std::span<const std::uint8_t> received);

// Payload bytes one frame can carry: floor((rows*cols - 40) / 8), min 0.
int frame_capacity(const StegoKey& key);

} // namespace sbb
