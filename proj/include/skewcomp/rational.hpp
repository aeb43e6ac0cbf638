#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>

#include <gmpxx.h>

#include "skewcomp/float_format.hpp"

namespace skewcomp {

using Integer = mpz_class;

/// Exact fraction, always in lowest terms with a positive denominator.
///
/// This is the reference number type: every quantity the bounds depend on
/// (coefficients, t = iD/A, rounded values) is rational, so floor/ceil of a
/// bound can be decided exactly instead of through a wide float format.
class Rational {
public:
    Rational() = default;
    Rational(std::int64_t value) : q_(static_cast<long>(value)) {}
    explicit Rational(const Integer& value) : q_(value) {}

    /// Throws Error(zero_denominator) when den == 0.
    Rational(const Integer& num, const Integer& den);

    /// Exact value of a finite double.
    static Rational from_double(double value);

    Integer num() const { return q_.get_num(); }
    Integer den() const { return q_.get_den(); }

    int sign() const { return sgn(q_); }
    bool is_zero() const { return sign() == 0; }
    bool is_integer() const { return q_.get_den() == 1; }

    Rational abs() const;

    /// Nearest double toward zero; only for display and hardware comparisons
    /// of values known to be representable.
    double to_double() const { return q_.get_d(); }

    /// "num/den", or just "num" for integers.
    std::string str() const;

    Rational operator-() const;
    Rational& operator+=(const Rational& rhs);
    Rational& operator-=(const Rational& rhs);
    Rational& operator*=(const Rational& rhs);
    Rational& operator/=(const Rational& rhs);

    friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
    friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
    friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
    friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }

    friend bool operator==(const Rational& lhs, const Rational& rhs) { return cmp(lhs.q_, rhs.q_) == 0; }
    friend std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs)
    {
        return cmp(lhs.q_, rhs.q_) <=> 0;
    }

    const mpq_class& raw() const { return q_; }

private:
    mpq_class q_;
};

std::ostream& operator<<(std::ostream& os, const Rational& q);

/// num/den normalized. Throws Error(zero_denominator) when den == 0.
Rational rat(const Integer& num, const Integer& den);

Integer floor_rat(const Rational& q);
Integer ceil_rat(const Rational& q);
/// floor(q + 1/2)
Integer round_half_up_rat(const Rational& q);

/// base^exp; negative exponents need a nonzero base.
Rational power(const Rational& base, long exp);

/// Throws Error(overflow_risk) if the value does not fit in 64 bits.
std::int64_t to_int64(const Integer& value);

/// Element of `fmt` nearest to q; exact ties go to the even significand.
/// The exponent range is unbounded, so there is no overflow or underflow.
Rational round_to_format(const Rational& q, const FloatFormat& fmt);

/// True iff q is 0 or M * base^e with base^(p-1) <= |M| < base^p.
bool is_in_format(const Rational& q, const FloatFormat& fmt);

}  // namespace skewcomp
