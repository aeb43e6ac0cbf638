#pragma once

#include "skewcomp/float_format.hpp"
#include "skewcomp/rational.hpp"

namespace skewcomp {

/// u = base^(1-p) / 2
Rational unit_roundoff(const FloatFormat& fmt);

enum class Operation { rounding, multiply, divide };

/// E1 measures |t - fl(t)| against |t|, E2 against |fl(t)|.
enum class ErrorMeasure { e1, e2 };

/// Optimal relative error bound of a correctly rounded operation
/// (rounding a real, x*y, x/y for x, y in the format).
///
/// | op       | E1                        | E2                              |
/// |----------|---------------------------|---------------------------------|
/// | rounding | u/(1+u)                   | u                               |
/// | multiply | u/(1+u)                   | u                               |
/// | divide   | u-2u^2 (base 2) else u/(1+u) | (u-2u^2)/(1+u-2u^2) (base 2) else u |
Rational op_error_bound(Operation op, ErrorMeasure measure, const FloatFormat& fmt);

struct RelativeErrors {
    Rational e1;
    Rational e2;
};

/// E1 and E2 of rounding t into fmt; both are 0 at t = 0.
RelativeErrors relative_errors(const Rational& t, const FloatFormat& fmt);

/// Per-operation E1 bounds for the product-of-quotient pipeline
/// fl(fl(x) * fl(fl(y) / fl(z))): delta1..delta3 round the inputs, delta4 is
/// the division and delta5 the multiplication.
struct ErrorBudget {
    FloatFormat format;
    Rational delta1_bound;
    Rational delta2_bound;
    Rational delta3_bound;
    Rational delta4_bound;
    Rational delta5_bound;
};

ErrorBudget error_budget(const FloatFormat& fmt);

// Correctly rounded arithmetic on exact values, independent of the host FPU.
Rational rounded_add(const Rational& x, const Rational& y, const FloatFormat& fmt);
Rational rounded_sub(const Rational& x, const Rational& y, const FloatFormat& fmt);
Rational rounded_mul(const Rational& x, const Rational& y, const FloatFormat& fmt);
/// Throws Error(zero_divisor) when y == 0.
Rational rounded_div(const Rational& x, const Rational& y, const FloatFormat& fmt);

}  // namespace skewcomp
