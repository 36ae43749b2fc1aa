#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace conegeom {

/// Machine-readable failure categories. The CLI prints these as the
/// `code` field of its error object.
enum class ErrorCode {
    invalid_vector,
    invalid_matrix,
    dimension_mismatch,
    out_of_domain,
    not_cone_preserving,
    not_uniformly_positive,
    not_strictly_positive,
    invalid_grid,
    pattern_failure,
    parse_error,
    negative_entry,
    io_error,
    bad_argument,
};

inline std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::invalid_vector: return "invalid_vector";
    case ErrorCode::invalid_matrix: return "invalid_matrix";
    case ErrorCode::dimension_mismatch: return "dimension_mismatch";
    case ErrorCode::out_of_domain: return "out_of_domain";
    case ErrorCode::not_cone_preserving: return "not_cone_preserving";
    case ErrorCode::not_uniformly_positive: return "not_uniformly_positive";
    case ErrorCode::not_strictly_positive: return "not_strictly_positive";
    case ErrorCode::invalid_grid: return "invalid_grid";
    case ErrorCode::pattern_failure: return "pattern_failure";
    case ErrorCode::parse_error: return "parse_error";
    case ErrorCode::negative_entry: return "negative_entry";
    case ErrorCode::io_error: return "io_error";
    case ErrorCode::bad_argument: return "bad_argument";
    }
    return "unknown";
}

/// Exception thrown by every operation in the library.
///
/// `location` is free-form: a file position for parse errors, an index or
/// index pair for pattern failures, empty when nothing more precise exists.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message, std::string location = {})
        : std::runtime_error(message), code_(code), location_(std::move(location)) {}

    ErrorCode code() const noexcept { return code_; }
    const std::string& location() const noexcept { return location_; }

private:
    ErrorCode code_;
    std::string location_;
};

} // namespace conegeom
