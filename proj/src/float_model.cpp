#include "skewcomp/float_model.hpp"

#include "skewcomp/error.hpp"

namespace skewcomp {

Rational unit_roundoff(const FloatFormat& fmt)
{
    validate(fmt);
    return power(Rational(fmt.base), 1 - fmt.precision) / Rational(2);
}

Rational op_error_bound(Operation op, ErrorMeasure measure, const FloatFormat& fmt)
{
    const Rational u = unit_roundoff(fmt);
    const Rational one(1);
    const Rational e1_generic = u / (one + u);

    if (op == Operation::divide && fmt.base == 2) {
        const Rational e1 = u - Rational(2) * u * u;
        return measure == ErrorMeasure::e1 ? e1 : e1 / (one + e1);
    }
    return measure == ErrorMeasure::e1 ? e1_generic : u;
}

RelativeErrors relative_errors(const Rational& t, const FloatFormat& fmt)
{
    if (t.is_zero())
        return {Rational(0), Rational(0)};
    const Rational rounded = round_to_format(t, fmt);
    const Rational gap = (t - rounded).abs();
    return {gap / t.abs(), gap / rounded.abs()};
}

ErrorBudget error_budget(const FloatFormat& fmt)
{
    const Rational rounding = op_error_bound(Operation::rounding, ErrorMeasure::e1, fmt);
    return {
        fmt,
        rounding,
        rounding,
        rounding,
        op_error_bound(Operation::divide, ErrorMeasure::e1, fmt),
        op_error_bound(Operation::multiply, ErrorMeasure::e1, fmt),
    };
}

Rational rounded_add(const Rational& x, const Rational& y, const FloatFormat& fmt)
{
    return round_to_format(x + y, fmt);
}

Rational rounded_sub(const Rational& x, const Rational& y, const FloatFormat& fmt)
{
    return round_to_format(x - y, fmt);
}

Rational rounded_mul(const Rational& x, const Rational& y, const FloatFormat& fmt)
{
    return round_to_format(x * y, fmt);
}

Rational rounded_div(const Rational& x, const Rational& y, const FloatFormat& fmt)
{
    if (y.is_zero())
        throw Error(ErrorCode::zero_divisor, "division by zero");
    return round_to_format(x / y, fmt);
}

}  // namespace skewcomp
