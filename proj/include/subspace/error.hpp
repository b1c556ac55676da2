#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace subspace {

enum class ErrorCode {
    invalid_input,        // non-finite data, negative tolerances, bad arguments
    shape,                // incompatible dimensions
    range,                // index outside the valid interval
    normalization,        // vector expected to be unit length
    degenerate_pencil,    // [A; B] without full column rank
    degenerate_spectrum,  // all energy gaps zero
    insufficient_rank,
    order,                // smoothness order exceeds the available spectrum
    config,               // window / scan configuration
    layout,               // embedding layout inconsistent with data
    spec,                 // synthetic generator specification
    parse,                // file format errors
    io,
};

std::string_view error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Parse failure with a 1-based line and column.
class ParseError : public Error {
public:
    ParseError(std::string source, std::size_t line, std::size_t column, const std::string& message);
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

}  // namespace subspace
