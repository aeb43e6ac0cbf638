#pragma once

#include <stdexcept>
#include <string>

namespace skewcomp {

enum class ErrorCode {
    zero_denominator,
    unsupported_base,
    zero_divisor,
    invalid_slope,
    skew_out_of_range,
    overflow_risk,
    invalid_argument,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message);

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace skewcomp
