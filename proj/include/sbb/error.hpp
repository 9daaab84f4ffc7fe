#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sbb {

enum class ErrorCode {
    KeyInvalid,
    ImageTooSmall,
    IndexOutOfRange,
    CapacityExceeded,
    BadMagic,
    TruncatedFrame,
    NotEnoughCovers,
    MessageTooLarge,
    UnsupportedFormat,
    MalformedHeader,
    TruncatedData,
    ShapeMismatch,
    LengthMismatch,
    EmptyInput,
    ConnectionFailed,
    AckTimeout,
    AckRejected,
    BindFailed,
    MissingFrames,
    ConflictingFrames,
    InvalidArgument,
    IoFailure,
};

constexpr std::string_view error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::KeyInvalid: return "key_invalid";
        case ErrorCode::ImageTooSmall: return "image_too_small";
        case ErrorCode::IndexOutOfRange: return "index_out_of_range";
        case ErrorCode::CapacityExceeded: return "capacity_exceeded";
        case ErrorCode::BadMagic: return "bad_magic";
        case ErrorCode::TruncatedFrame: return "truncated_frame";
        case ErrorCode::NotEnoughCovers: return "not_enough_covers";
        case ErrorCode::MessageTooLarge: return "message_too_large";
        case ErrorCode::UnsupportedFormat: return "unsupported_format";
        case ErrorCode::MalformedHeader: return "malformed_header";
        case ErrorCode::TruncatedData: return "truncated_data";
        case ErrorCode::ShapeMismatch: return "shape_mismatch";
        case ErrorCode::LengthMismatch: return "length_mismatch";
        case ErrorCode::EmptyInput: return "empty_input";
        case ErrorCode::ConnectionFailed: return "connection_failed";
        case ErrorCode::AckTimeout: return "ack_timeout";
        case ErrorCode::AckRejected: return "ack_rejected";
        case ErrorCode::BindFailed: return "bind_failed";
        case ErrorCode::MissingFrames: return "missing_frames";
        case ErrorCode::ConflictingFrames: return "conflicting_frames";
        case ErrorCode::InvalidArgument: return "invalid_argument";
        case ErrorCode::IoFailure: return "io_failure";
    }
    return "unknown";
}

// what() is "<code_name>: <detail>", machine-parsable after an "error: " prefix.
class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& detail)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + detail),
          code_(code) {}

    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

} // namespace sbb
