#include "skewcomp/rational.hpp"

#include <cmath>
#include <limits>
#include <ostream>

#include "skewcomp/error.hpp"

namespace skewcomp {

void validate(const FloatFormat& fmt)
{
    if (fmt.base < 2 || fmt.precision < 2)
        throw Error(ErrorCode::invalid_argument,
                    "float format needs base >= 2 and precision >= 2, got base " +
                        std::to_string(fmt.base) + " precision " + std::to_string(fmt.precision));
}

Rational::Rational(const Integer& num, const Integer& den)
{
    if (den == 0)
        throw Error(ErrorCode::zero_denominator, "rational with zero denominator");
    q_.get_num() = num;
    q_.get_den() = den;
    q_.canonicalize();
}

Rational Rational::from_double(double value)
{
    if (!std::isfinite(value))
        throw Error(ErrorCode::invalid_argument, "cannot convert a non-finite double to a rational");
    Rational out;
    out.q_ = value;  // mpq_set_d is exact
    return out;
}

Rational Rational::abs() const
{
    Rational out;
    out.q_ = ::abs(q_);
    return out;
}

std::string Rational::str() const
{
    if (is_integer())
        return q_.get_num().get_str();
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

Rational Rational::operator-() const
{
    Rational out;
    out.q_ = -q_;
    return out;
}

Rational& Rational::operator+=(const Rational& rhs)
{
    q_ += rhs.q_;
    return *this;
}

Rational& Rational::operator-=(const Rational& rhs)
{
    q_ -= rhs.q_;
    return *this;
}

Rational& Rational::operator*=(const Rational& rhs)
{
    q_ *= rhs.q_;
    return *this;
}

Rational& Rational::operator/=(const Rational& rhs)
{
    if (rhs.is_zero())
        throw Error(ErrorCode::zero_denominator, "division of a rational by zero");
    q_ /= rhs.q_;
    return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& q)
{
    return os << q.str();
}

Rational rat(const Integer& num, const Integer& den)
{
    return Rational(num, den);
}

Integer floor_rat(const Rational& q)
{
    Integer out;
    mpz_fdiv_q(out.get_mpz_t(), q.raw().get_num_mpz_t(), q.raw().get_den_mpz_t());
    return out;
}

Integer ceil_rat(const Rational& q)
{
    Integer out;
    mpz_cdiv_q(out.get_mpz_t(), q.raw().get_num_mpz_t(), q.raw().get_den_mpz_t());
    return out;
}

Integer round_half_up_rat(const Rational& q)
{
    // floor((2n + d) / 2d)
    const Integer n = q.num();
    const Integer d = q.den();
    Integer out;
    const Integer top = 2 * n + d;
    const Integer bottom = 2 * d;
    mpz_fdiv_q(out.get_mpz_t(), top.get_mpz_t(), bottom.get_mpz_t());
    return out;
}

namespace {

Integer ipow(int base, unsigned long exp)
{
    Integer out;
    mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(base), exp);
    return out;
}

// |q| = a/b written as (N/den) * base^exp with base^(p-1) <= N/den < base^p.
struct Significand {
    Integer num;
    Integer den;
    long exp = 0;
};

Significand to_significand(const Integer& a, const Integer& b, const FloatFormat& fmt)
{
    const Integer low = ipow(fmt.base, static_cast<unsigned long>(fmt.precision - 1));
    const Integer high = low * fmt.base;

    // log_base(a/b) from bit lengths; off by at most a step or two.
    const double bits = static_cast<double>(mpz_sizeinbase(a.get_mpz_t(), 2)) -
                        static_cast<double>(mpz_sizeinbase(b.get_mpz_t(), 2));
    long exp = static_cast<long>(std::floor(bits / std::log2(static_cast<double>(fmt.base)))) -
               (fmt.precision - 1);

    Significand s;
    for (;;) {
        if (exp >= 0) {
            s.num = a;
            s.den = b * ipow(fmt.base, static_cast<unsigned long>(exp));
        } else {
            s.num = a * ipow(fmt.base, static_cast<unsigned long>(-exp));
            s.den = b;
        }
        if (s.num < low * s.den) {
            --exp;
        } else if (s.num >= high * s.den) {
            ++exp;
        } else {
            break;
        }
    }
    s.exp = exp;
    return s;
}

Rational scale(const Integer& m, int base, long exp)
{
    if (exp >= 0)
        return Rational(Integer(m * ipow(base, static_cast<unsigned long>(exp))));
    return Rational(m, ipow(base, static_cast<unsigned long>(-exp)));
}

}  // namespace

Rational power(const Rational& base, long exp)
{
    if (exp == 0)
        return Rational(1);
    if (exp < 0 && base.is_zero())
        throw Error(ErrorCode::zero_denominator, "negative power of zero");
    const unsigned long n = static_cast<unsigned long>(exp < 0 ? -exp : exp);
    Integer num;
    Integer den;
    mpz_pow_ui(num.get_mpz_t(), base.raw().get_num_mpz_t(), n);
    mpz_pow_ui(den.get_mpz_t(), base.raw().get_den_mpz_t(), n);
    return exp > 0 ? Rational(num, den) : Rational(den, num);
}

std::int64_t to_int64(const Integer& value)
{
    if (!value.fits_slong_p())
        throw Error(ErrorCode::overflow_risk, "integer " + value.get_str() + " does not fit in 64 bits");
    return static_cast<std::int64_t>(value.get_si());
}

Rational round_to_format(const Rational& q, const FloatFormat& fmt)
{
    validate(fmt);
    if (q.is_zero())
        return q;

    const Integer a = abs(q.num());
    Significand s = to_significand(a, q.den(), fmt);

    Integer m;
    Integer rem;
    mpz_fdiv_qr(m.get_mpz_t(), rem.get_mpz_t(), s.num.get_mpz_t(), s.den.get_mpz_t());
    const int half = cmp(Integer(2 * rem), s.den);
    if (half > 0 || (half == 0 && mpz_odd_p(m.get_mpz_t())))
        m += 1;

    // Rounding up out of the top of the binade lands on base^(p-1) * base^(e+1).
    if (m == ipow(fmt.base, static_cast<unsigned long>(fmt.precision))) {
        m = ipow(fmt.base, static_cast<unsigned long>(fmt.precision - 1));
        ++s.exp;
    }

    Rational out = scale(m, fmt.base, s.exp);
    return q.sign() < 0 ? -out : out;
}

bool is_in_format(const Rational& q, const FloatFormat& fmt)
{
    validate(fmt);
    if (q.is_zero())
        return true;
    const Significand s = to_significand(abs(q.num()), q.den(), fmt);
    return mpz_divisible_p(s.num.get_mpz_t(), s.den.get_mpz_t()) != 0;
}

}  // namespace skewcomp
