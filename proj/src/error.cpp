#include "skewcomp/error.hpp"

namespace skewcomp {

const char* to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::zero_denominator: return "ZeroDenominator";
    case ErrorCode::unsupported_base: return "UnsupportedBase";
    case ErrorCode::zero_divisor: return "ZeroDivisor";
    case ErrorCode::invalid_slope: return "InvalidSlope";
    case ErrorCode::skew_out_of_range: return "SkewOutOfRange";
    case ErrorCode::overflow_risk: return "OverflowRisk";
    case ErrorCode::invalid_argument: return "InvalidArgument";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code)
{}

}  // namespace skewcomp
