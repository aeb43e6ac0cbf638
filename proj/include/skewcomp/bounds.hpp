#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "skewcomp/float_format.hpp"
#include "skewcomp/rational.hpp"

namespace skewcomp {

enum class Method { theoretical, practical, approximate, reference };

/// Working precision of a bound computation. `exact` only tags reference
/// intervals, which are evaluated in rational arithmetic.
enum class Precision { binary32, binary64, exact };

/// Operation order for the working-precision estimate of t = i*D/A.
///   product_first:  fl(fl(fl(i) * fl(D)) / fl(A))
///   quotient_first: fl(fl(i) * fl(fl(D) / fl(A)))
/// Both are covered by the same error bound (one multiply, one divide).
enum class EvalOrder { product_first, quotient_first };

std::string_view to_string(Method method) noexcept;
std::string_view to_string(Precision precision) noexcept;
std::string_view to_string(EvalOrder order) noexcept;
std::optional<Method> parse_method(std::string_view text);
std::optional<Precision> parse_precision(std::string_view text);
std::optional<EvalOrder> parse_eval_order(std::string_view text);

/// Format of a working precision; throws Error(invalid_argument) for exact.
FloatFormat format_of(Precision precision);

/// Integer candidate range [lb, ub] for the compensated clock. In the
/// refinement the candidates are k = lb, ..., k + l with l = ub - lb.
struct CandidateInterval {
    std::int64_t lb = 0;
    std::int64_t ub = 0;
    Method method = Method::reference;
    Precision precision = Precision::exact;

    std::int64_t width() const noexcept { return ub - lb; }
    bool contains(std::int64_t j) const noexcept { return lb <= j && j <= ub; }

    friend bool operator==(const CandidateInterval&, const CandidateInterval&) = default;
};

struct CoefficientPair {
    Rational lower;
    Rational upper;
};

/// Multipliers c_lo, c_hi with c_lo * t <= fl(t) <= c_hi * t for t = x*y/z
/// evaluated with one rounding per input, one division and one multiplication:
///   c_lo = (1 - u + 2u^2) / ((1 + u)^2 (1 + 2u))
///   c_hi = (1 + 2u)^3 (1 + u - 2u^2) / (1 + u)^2
/// Requires base 2 (Error(unsupported_base) otherwise).
CoefficientPair theoretical_coefficients(const FloatFormat& fmt);

/// Looser multipliers built only from 1 - u and 1 + 2u, both of which are
/// representable: c_lo = (1 - u) / (1 + 2u)^3, c_hi = (1 + 2u)^3.
CoefficientPair practical_coefficients(const FloatFormat& fmt);

/// Coefficients of `method` as computed in the working precision.
/// Practical: w = 1+2u, hi = (w*w)*w, lo = (1-u)/hi.
/// Theoretical: numerator and denominator rounded separately, then one
/// division, e.g. lo = ((1-u) + 2*(u*u)) / (((1+u)*(1+u)) * w).
/// Only theoretical and practical have coefficients.
struct WorkingCoefficients {
    double lower;
    double upper;
};
WorkingCoefficients working_coefficients(Method method, Precision precision);

/// Working-precision estimate of i*D/A on the host FPU (round-to-nearest-even
/// after every operation). The float result is widened exactly to double.
/// Throws Error(zero_divisor) when A == 0, Error(invalid_argument) for
/// negative inputs or Precision::exact.
double compute_t_hat(std::int64_t i, std::int64_t D, std::int64_t A, Precision precision,
                     EvalOrder order = EvalOrder::product_first);

/// The same pipeline on exact values with every step rounded by
/// round_to_format, e.g. fl(fl(x) * fl(fl(y) / fl(z))) for quotient_first.
Rational emulate_t_hat(const Rational& x, const Rational& y, const Rational& z,
                       const FloatFormat& fmt, EvalOrder order);

/// 10^-7, the margin coefficient of the approximate bounds (margin = 1 + 10^-7 * i).
Rational default_eps_coeff();

/// Candidate interval for the compensated clock of hardware clock i with
/// slope D/A < 1, computed in `precision`:
///   theoretical / practical: [floor(fl(c_lo * t_hat)), ceil(fl(c_hi * t_hat))]
///   approximate:             [floor(fl(t_hat - m)), ceil(fl(t_hat + m))],
///                            m = fl(1 + fl(eps_coeff * i))
///   reference:               reference_interval(i, D, A, format_of(precision))
/// Throws Error(invalid_slope) unless 0 < D < A, Error(invalid_argument) when
/// i < 0 or a working method is asked for Precision::exact.
CandidateInterval candidate_interval(std::int64_t i, std::int64_t D, std::int64_t A, Method method,
                                     Precision precision,
                                     const Rational& eps_coeff = default_eps_coeff(),
                                     EvalOrder order = EvalOrder::product_first);

/// [floor(c_lo * t), ceil(c_hi * t)] with t = i*D/A and the theoretical
/// coefficients of `fmt`, all exact.
CandidateInterval reference_interval(std::int64_t i, std::int64_t D, std::int64_t A,
                                     const FloatFormat& fmt);

/// dlb = reference.lb - candidate.lb, dub = candidate.ub - reference.ub.
/// A negative value means the candidate cut into the guaranteed interval.
struct IntervalDeltas {
    std::int64_t dlb = 0;
    std::int64_t dub = 0;

    friend bool operator==(const IntervalDeltas&, const IntervalDeltas&) = default;
};

IntervalDeltas interval_deltas(const CandidateInterval& candidate, const CandidateInterval& reference);

}  // namespace skewcomp
