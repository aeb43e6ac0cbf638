#pragma once

namespace skewcomp {

/// Base-`base`, precision-`precision` floating-point format with an unbounded
/// exponent range: 0 together with every M * base^e where
/// base^(precision-1) <= |M| < base^precision.
struct FloatFormat {
    int base = 2;
    int precision = 24;

    static constexpr FloatFormat binary32() noexcept { return {2, 24}; }
    static constexpr FloatFormat binary64() noexcept { return {2, 53}; }

    friend constexpr bool operator==(const FloatFormat&, const FloatFormat&) = default;
};

/// Throws Error(invalid_argument) unless base >= 2 and precision >= 2.
void validate(const FloatFormat& fmt);

}  // namespace skewcomp
