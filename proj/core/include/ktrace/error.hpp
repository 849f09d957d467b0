#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ktrace {

enum class ErrorCode {
    NotSquare,
    NotAContraction,
    NotStrict,
    NotHermitian,
    NotPSD,
    NotPositiveContraction,
    SingularB,
    PowerExceedsWindow,
    NonRealResult,
    InsufficientCoefficients,
    OutsideOpenDisc,
    RequiresStrictPair,
    InvalidRadius,
    InvalidDelta,
    InvalidConfig,
    InvalidArgument,
    DimensionMismatch,
    ParseError,
    IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries a machine-readable code.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace ktrace
