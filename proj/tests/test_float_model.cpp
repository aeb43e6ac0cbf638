#include <gtest/gtest.h>

#include <random>

#include "skewcomp/error.hpp"
#include "skewcomp/float_model.hpp"

using namespace skewcomp;

namespace {

Rational q(long n, long d)
{
    return Rational(Integer(n), Integer(d));
}

Rational random_positive(std::mt19937_64& rng)
{
    std::uniform_int_distribution<long> m(1, (1L << 40) - 1);
    std::uniform_int_distribution<long> e(-20, 20);
    return q(m(rng), 1L << 40) * power(Rational(2), e(rng));
}

}  // namespace

TEST(UnitRoundoff, Values)
{
    EXPECT_EQ(unit_roundoff(FloatFormat::binary32()), q(1, 1L << 24));
    EXPECT_EQ(unit_roundoff(FloatFormat::binary64()), q(1, 1L << 53));
    EXPECT_EQ(unit_roundoff({10, 3}), q(1, 200));
    EXPECT_THROW(unit_roundoff({2, 1}), Error);
}

TEST(OpErrorBound, Table)
{
    const FloatFormat fmt = FloatFormat::binary32();
    const Rational u = unit_roundoff(fmt);
    const Rational one(1);
    EXPECT_EQ(op_error_bound(Operation::rounding, ErrorMeasure::e1, fmt), u / (one + u));
    EXPECT_EQ(op_error_bound(Operation::rounding, ErrorMeasure::e2, fmt), u);
    EXPECT_EQ(op_error_bound(Operation::multiply, ErrorMeasure::e1, fmt), u / (one + u));
    EXPECT_EQ(op_error_bound(Operation::multiply, ErrorMeasure::e2, fmt), u);
    const Rational d1 = u - Rational(2) * u * u;
    EXPECT_EQ(op_error_bound(Operation::divide, ErrorMeasure::e1, fmt), d1);
    EXPECT_EQ(op_error_bound(Operation::divide, ErrorMeasure::e2, fmt), d1 / (one + d1));
    EXPECT_EQ(op_error_bound(Operation::divide, ErrorMeasure::e1, {10, 3}),
              op_error_bound(Operation::rounding, ErrorMeasure::e1, {10, 3}));
}

TEST(RelativeErrors, FrozenOneThird)
{
    const RelativeErrors r = relative_errors(q(1, 3), FloatFormat::binary32());
    EXPECT_EQ(r.e1, q(1, 33554432));
    EXPECT_EQ(r.e2, q(1, 33554433));
    const RelativeErrors z = relative_errors(Rational(0), FloatFormat::binary32());
    EXPECT_TRUE(z.e1.is_zero());
    EXPECT_TRUE(z.e2.is_zero());
}

TEST(RelativeErrors, RoundingBoundsHold)
{
    std::mt19937_64 rng(11);
    for (int p : {3, 11, 24}) {
        const FloatFormat fmt{2, p};
        const Rational e1 = op_error_bound(Operation::rounding, ErrorMeasure::e1, fmt);
        const Rational e2 = op_error_bound(Operation::rounding, ErrorMeasure::e2, fmt);
        for (int k = 0; k < 3000; ++k) {
            const RelativeErrors r = relative_errors(random_positive(rng), fmt);
            EXPECT_LE(r.e1, e1);
            EXPECT_LE(r.e2, e2);
        }
    }
}

TEST(RelativeErrors, RoundingBoundIsAttained)
{
    // 1 + u is a tie that rounds down to 1, giving E1 = u / (1 + u) exactly.
    const FloatFormat fmt = FloatFormat::binary32();
    const Rational u = unit_roundoff(fmt);
    const RelativeErrors r = relative_errors(Rational(1) + u, fmt);
    EXPECT_EQ(r.e1, op_error_bound(Operation::rounding, ErrorMeasure::e1, fmt));
}

TEST(RelativeErrors, DivisionBoundsHold)
{
    std::mt19937_64 rng(12);
    for (int p : {3, 6, 11, 24}) {
        const FloatFormat fmt{2, p};
        const Rational e1 = op_error_bound(Operation::divide, ErrorMeasure::e1, fmt);
        const Rational e2 = op_error_bound(Operation::divide, ErrorMeasure::e2, fmt);
        for (int k = 0; k < 3000; ++k) {
            const Rational x = round_to_format(random_positive(rng), fmt);
            const Rational y = round_to_format(random_positive(rng), fmt);
            const RelativeErrors r = relative_errors(x / y, fmt);
            EXPECT_LE(r.e1, e1);
            EXPECT_LE(r.e2, e2);
        }
    }
}

TEST(RelativeErrors, DivisionBoundExhaustiveSmallPrecision)
{
    // Every quotient of two p=5 significands; the E1 bound must hold and be reached.
    const FloatFormat fmt{2, 5};
    const Rational e1 = op_error_bound(Operation::divide, ErrorMeasure::e1, fmt);
    Rational worst(0);
    for (long x = 16; x < 32; ++x)
        for (long y = 16; y < 32; ++y) {
            const RelativeErrors r = relative_errors(q(x, y), fmt);
            EXPECT_LE(r.e1, e1);
            if (r.e1 > worst)
                worst = r.e1;
        }
    EXPECT_LE(worst, e1);
    EXPECT_GT(worst, op_error_bound(Operation::rounding, ErrorMeasure::e1, fmt) / Rational(2));
}

TEST(ErrorBudget, Assignments)
{
    const FloatFormat fmt = FloatFormat::binary64();
    const ErrorBudget b = error_budget(fmt);
    const Rational rounding = op_error_bound(Operation::rounding, ErrorMeasure::e1, fmt);
    EXPECT_EQ(b.format, fmt);
    EXPECT_EQ(b.delta1_bound, rounding);
    EXPECT_EQ(b.delta2_bound, rounding);
    EXPECT_EQ(b.delta3_bound, rounding);
    EXPECT_EQ(b.delta4_bound, op_error_bound(Operation::divide, ErrorMeasure::e1, fmt));
    EXPECT_EQ(b.delta5_bound, op_error_bound(Operation::multiply, ErrorMeasure::e1, fmt));
}

TEST(RoundedOps, MatchHardwareFloat)
{
    std::mt19937 rng(13);
    std::uniform_int_distribution<int> m(1, (1 << 24) - 1);
    const FloatFormat fmt = FloatFormat::binary32();
    for (int k = 0; k < 20000; ++k) {
        const float x = static_cast<float>(m(rng)) / 4096.0f;
        const float y = static_cast<float>(m(rng)) / 65536.0f;
        const Rational rx = Rational::from_double(x);
        const Rational ry = Rational::from_double(y);
        EXPECT_EQ(rounded_add(rx, ry, fmt), Rational::from_double(x + y));
        EXPECT_EQ(rounded_sub(rx, ry, fmt), Rational::from_double(x - y));
        EXPECT_EQ(rounded_mul(rx, ry, fmt), Rational::from_double(x * y));
        EXPECT_EQ(rounded_div(rx, ry, fmt), Rational::from_double(x / y));
    }
    try {
        rounded_div(Rational(1), Rational(0), fmt);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::zero_divisor);
    }
}
