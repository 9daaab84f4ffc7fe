#include "sbb/metrics.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>

#include "sbb/error.hpp"

namespace sbb {

std::string QualityReport::to_record() const {
    std::ostringstream oss;
    oss << "mse=" << mse << " psnr_db=";
    if (std::isinf(psnr_db))
        oss << "inf";
    else
        oss << psnr_db;
    oss << " max_abs_diff=" << max_abs_diff;
    return oss.str();
}

QualityReport compare(const RasterImage& a, const RasterImage& b) {
    if (!a.same_shape(b))
        throw Error(ErrorCode::ShapeMismatch,
                    std::to_string(a.width) + "x" + std::to_string(a.height) + "x" +
                        std::to_string(a.channels) + " vs " + std::to_string(b.width) +
                        "x" + std::to_string(b.height) + "x" + std::to_string(b.channels));
    QualityReport report;
    double sum_sq = 0.0;
    for (std::size_t i = 0; i < a.samples.size(); ++i) {
        const int d = std::abs(int(a.samples[i]) - int(b.samples[i]));
        sum_sq += double(d) * double(d);
        if (d > report.max_abs_diff) report.max_abs_diff = d;
    }
    report.mse = a.samples.empty() ? 0.0 : sum_sq / double(a.samples.size());
    report.psnr_db = report.mse == 0.0
                         ? std::numeric_limits<double>::infinity()
                         : 10.0 * std::log10(255.0 * 255.0 / report.mse);
    return report;
}

double bit_error_rate(std::span<const std::uint8_t> sent,
                      std::span<const std::uint8_t> received) {
    if (sent.size() != received.size())
        throw Error(ErrorCode::LengthMismatch,
                    std::to_string(sent.size()) + " vs " + std::to_string(received.size()) +
                        " bits");
    if (sent.empty())
        throw Error(ErrorCode::EmptyInput, "bit sequences must be nonempty");
    std::size_t errors = 0;
    for (std::size_t i = 0; i < sent.size(); ++i)
        if ((sent[i] != 0) != (received[i] != 0)) ++errors;
    return double(errors) / double(sent.size());
}

int frame_capacity(const StegoKey& key) {
    const int blocks = int(key.rows) * int(key.cols);
    if (blocks < 40) return 0;
    return (blocks - 40) / 8;
}

} // namespace sbb
