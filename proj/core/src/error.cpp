#include "ktrace/error.hpp"

namespace ktrace {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::NotSquare: return "NotSquare";
        case ErrorCode::NotAContraction: return "NotAContraction";
        case ErrorCode::NotStrict: return "NotStrict";
        case ErrorCode::NotHermitian: return "NotHermitian";
        case ErrorCode::NotPSD: return "NotPSD";
        case ErrorCode::NotPositiveContraction: return "NotPositiveContraction";
        case ErrorCode::SingularB: return "SingularB";
        case ErrorCode::PowerExceedsWindow: return "PowerExceedsWindow";
        case ErrorCode::NonRealResult: return "NonRealResult";
        case ErrorCode::InsufficientCoefficients: return "InsufficientCoefficients";
        case ErrorCode::OutsideOpenDisc: return "OutsideOpenDisc";
        case ErrorCode::RequiresStrictPair: return "RequiresStrictPair";
        case ErrorCode::InvalidRadius: return "InvalidRadius";
        case ErrorCode::InvalidDelta: return "InvalidDelta";
        case ErrorCode::InvalidConfig: return "InvalidConfig";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

}  // namespace ktrace
