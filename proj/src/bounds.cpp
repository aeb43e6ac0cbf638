#include "skewcomp/bounds.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "skewcomp/error.hpp"
#include "skewcomp/float_model.hpp"

namespace skewcomp {

std::string_view to_string(Method method) noexcept
{
    switch (method) {
    case Method::theoretical: return "theoretical";
    case Method::practical: return "practical";
    case Method::approximate: return "approximate";
    case Method::reference: return "reference";
    }
    return "unknown";
}

std::string_view to_string(Precision precision) noexcept
{
    switch (precision) {
    case Precision::binary32: return "binary32";
    case Precision::binary64: return "binary64";
    case Precision::exact: return "exact";
    }
    return "unknown";
}

std::string_view to_string(EvalOrder order) noexcept
{
    return order == EvalOrder::product_first ? "product_first" : "quotient_first";
}

std::optional<Method> parse_method(std::string_view text)
{
    for (Method m : {Method::theoretical, Method::practical, Method::approximate, Method::reference})
        if (text == to_string(m))
            return m;
    return std::nullopt;
}

std::optional<Precision> parse_precision(std::string_view text)
{
    if (text == "binary32" || text == "single")
        return Precision::binary32;
    if (text == "binary64" || text == "double")
        return Precision::binary64;
    if (text == "exact")
        return Precision::exact;
    return std::nullopt;
}

std::optional<EvalOrder> parse_eval_order(std::string_view text)
{
    if (text == "product_first")
        return EvalOrder::product_first;
    if (text == "quotient_first")
        return EvalOrder::quotient_first;
    return std::nullopt;
}

FloatFormat format_of(Precision precision)
{
    switch (precision) {
    case Precision::binary32: return FloatFormat::binary32();
    case Precision::binary64: return FloatFormat::binary64();
    case Precision::exact: break;
    }
    throw Error(ErrorCode::invalid_argument, "exact precision has no float format");
}

namespace {

void require_base2(const FloatFormat& fmt)
{
    validate(fmt);
    if (fmt.base != 2)
        throw Error(ErrorCode::unsupported_base,
                    "clock bounds are derived for base 2, got base " + std::to_string(fmt.base));
}

CoefficientPair compute_theoretical(const FloatFormat& fmt)
{
    require_base2(fmt);
    const Rational u = unit_roundoff(fmt);
    const Rational one(1);
    const Rational two(2);
    const Rational one_plus_u = one + u;
    const Rational w = one + two * u;
    const Rational lower = (one - u + two * u * u) / (one_plus_u * one_plus_u * w);
    const Rational upper = w * w * w * (one + u - two * u * u) / (one_plus_u * one_plus_u);
    return {lower, upper};
}

const CoefficientPair& cached_theoretical(const FloatFormat& fmt)
{
    static const CoefficientPair b32 = compute_theoretical(FloatFormat::binary32());
    static const CoefficientPair b64 = compute_theoretical(FloatFormat::binary64());
    if (fmt == FloatFormat::binary32())
        return b32;
    return b64;
}

template <typename F>
F unit()
{
    return std::ldexp(F(1), -std::numeric_limits<F>::digits);
}

template <typename F>
WorkingCoefficients practical_working()
{
    const F u = unit<F>();
    const F one = 1;
    const F w = one + F(2) * u;
    const F hi = (w * w) * w;
    const F lo = (one - u) / hi;
    return {static_cast<double>(lo), static_cast<double>(hi)};
}

template <typename F>
WorkingCoefficients theoretical_working()
{
    const F u = unit<F>();
    const F one = 1;
    const F two = 2;
    const F uu2 = two * (u * u);
    const F one_plus_u = one + u;  // rounds to 1: 1+u is a midpoint
    const F w = one + two * u;

    const F num_lo = (one - u) + uu2;
    const F den_lo = (one_plus_u * one_plus_u) * w;
    const F num_hi = ((w * w) * w) * (one_plus_u - uu2);
    const F den_hi = one_plus_u * one_plus_u;
    return {static_cast<double>(num_lo / den_lo), static_cast<double>(num_hi / den_hi)};
}

template <typename F>
F t_hat(std::int64_t i, std::int64_t D, std::int64_t A, EvalOrder order)
{
    const F fi = static_cast<F>(i);
    const F fd = static_cast<F>(D);
    const F fa = static_cast<F>(A);
    if (order == EvalOrder::product_first) {
        const F product = fi * fd;
        return product / fa;
    }
    const F quotient = fd / fa;
    return fi * quotient;
}

template <typename F>
F to_working(const Rational& q)
{
    // Representable in F, hence exactly representable as a double too.
    return static_cast<F>(round_to_format(q, format_of(std::numeric_limits<F>::digits == 24
                                                          ? Precision::binary32
                                                          : Precision::binary64))
                              .to_double());
}

std::int64_t checked_floor(double v)
{
    const double f = std::floor(v);
    if (!(std::fabs(f) < 0x1p62))
        throw Error(ErrorCode::overflow_risk, "bound value out of 64-bit range");
    return static_cast<std::int64_t>(f);
}

std::int64_t checked_ceil(double v)
{
    const double c = std::ceil(v);
    if (!(std::fabs(c) < 0x1p62))
        throw Error(ErrorCode::overflow_risk, "bound value out of 64-bit range");
    return static_cast<std::int64_t>(c);
}

template <typename F>
CandidateInterval working_interval(std::int64_t i, std::int64_t D, std::int64_t A, Method method,
                                   Precision precision, const Rational& eps_coeff, EvalOrder order)
{
    const F t = t_hat<F>(i, D, A, order);
    F lower_value;
    F upper_value;
    if (method == Method::approximate) {
        const F eps = to_working<F>(eps_coeff) * static_cast<F>(i);
        const F margin = F(1) + eps;
        lower_value = t - margin;
        upper_value = t + margin;
    } else {
        const WorkingCoefficients c = working_coefficients(method, precision);
        lower_value = static_cast<F>(c.lower) * t;
        upper_value = static_cast<F>(c.upper) * t;
    }
    return {checked_floor(static_cast<double>(lower_value)), checked_ceil(static_cast<double>(upper_value)),
            method, precision};
}

void require_slope(std::int64_t i, std::int64_t D, std::int64_t A)
{
    if (i < 0)
        throw Error(ErrorCode::invalid_argument, "hardware clock must be nonnegative");
    if (!(0 < D && D < A))
        throw Error(ErrorCode::invalid_slope,
                    "bounds need 0 < D < A, got D=" + std::to_string(D) + " A=" + std::to_string(A));
}

}  // namespace

CoefficientPair theoretical_coefficients(const FloatFormat& fmt)
{
    if (fmt == FloatFormat::binary32() || fmt == FloatFormat::binary64())
        return cached_theoretical(fmt);
    return compute_theoretical(fmt);
}

CoefficientPair practical_coefficients(const FloatFormat& fmt)
{
    require_base2(fmt);
    const Rational u = unit_roundoff(fmt);
    const Rational w = Rational(1) + Rational(2) * u;
    const Rational cube = w * w * w;
    return {(Rational(1) - u) / cube, cube};
}

WorkingCoefficients working_coefficients(Method method, Precision precision)
{
    static const WorkingCoefficients practical32 = practical_working<float>();
    static const WorkingCoefficients practical64 = practical_working<double>();
    static const WorkingCoefficients theoretical32 = theoretical_working<float>();
    static const WorkingCoefficients theoretical64 = theoretical_working<double>();

    if (precision == Precision::exact)
        throw Error(ErrorCode::invalid_argument, "working coefficients need binary32 or binary64");
    const bool single = precision == Precision::binary32;
    switch (method) {
    case Method::theoretical: return single ? theoretical32 : theoretical64;
    case Method::practical: return single ? practical32 : practical64;
    default: break;
    }
    throw Error(ErrorCode::invalid_argument,
                std::string("method ") + std::string(to_string(method)) + " has no working coefficients");
}

double compute_t_hat(std::int64_t i, std::int64_t D, std::int64_t A, Precision precision, EvalOrder order)
{
    if (A == 0)
        throw Error(ErrorCode::zero_divisor, "A must be nonzero");
    if (i < 0 || D < 0 || A < 0)
        throw Error(ErrorCode::invalid_argument, "i, D and A must be nonnegative");
    switch (precision) {
    case Precision::binary32: return static_cast<double>(t_hat<float>(i, D, A, order));
    case Precision::binary64: return t_hat<double>(i, D, A, order);
    case Precision::exact: break;
    }
    throw Error(ErrorCode::invalid_argument, "t_hat needs binary32 or binary64");
}

Rational emulate_t_hat(const Rational& x, const Rational& y, const Rational& z, const FloatFormat& fmt,
                       EvalOrder order)
{
    const Rational fx = round_to_format(x, fmt);
    const Rational fy = round_to_format(y, fmt);
    const Rational fz = round_to_format(z, fmt);
    if (order == EvalOrder::product_first)
        return rounded_div(rounded_mul(fx, fy, fmt), fz, fmt);
    return rounded_mul(fx, rounded_div(fy, fz, fmt), fmt);
}

Rational default_eps_coeff()
{
    return Rational(1, 10'000'000);
}

CandidateInterval candidate_interval(std::int64_t i, std::int64_t D, std::int64_t A, Method method,
                                     Precision precision, const Rational& eps_coeff, EvalOrder order)
{
    require_slope(i, D, A);
    if (method == Method::reference)
        return reference_interval(i, D, A, format_of(precision));
    switch (precision) {
    case Precision::binary32: return working_interval<float>(i, D, A, method, precision, eps_coeff, order);
    case Precision::binary64: return working_interval<double>(i, D, A, method, precision, eps_coeff, order);
    case Precision::exact: break;
    }
    throw Error(ErrorCode::invalid_argument,
                std::string(to_string(method)) + " bounds need a working precision");
}

CandidateInterval reference_interval(std::int64_t i, std::int64_t D, std::int64_t A, const FloatFormat& fmt)
{
    require_slope(i, D, A);
    const CoefficientPair& c = theoretical_coefficients(fmt);
    const Integer t_num = Integer(static_cast<long>(i)) * static_cast<long>(D);

    // floor/ceil of (c.num * i * D) / (c.den * A) without canonicalizing.
    Integer lower;
    Integer upper;
    const Integer lower_num = c.lower.num() * t_num;
    const Integer lower_den = c.lower.den() * static_cast<long>(A);
    const Integer upper_num = c.upper.num() * t_num;
    const Integer upper_den = c.upper.den() * static_cast<long>(A);
    mpz_fdiv_q(lower.get_mpz_t(), lower_num.get_mpz_t(), lower_den.get_mpz_t());
    mpz_cdiv_q(upper.get_mpz_t(), upper_num.get_mpz_t(), upper_den.get_mpz_t());
    return {to_int64(lower), to_int64(upper), Method::reference, Precision::exact};
}

IntervalDeltas interval_deltas(const CandidateInterval& candidate, const CandidateInterval& reference)
{
    return {reference.lb - candidate.lb, candidate.ub - reference.ub};
}

}  // namespace skewcomp
