#pragma once

#include <cstdint>
#include <string_view>

#include "skewcomp/bounds.hpp"

namespace skewcomp {

/// Integer line walk tracking y = x * delta_b / delta_a with residual
/// r = x * delta_b - y * delta_a. After normalize() and after every step()
/// the point is the round-half-up point of the line: -delta_a <= 2r < delta_a.
/// Only integer add, subtract and compare are used.
class BresenhamWalker {
public:
    /// Requires 0 <= delta_b < delta_a. Throws Error(overflow_risk) when
    /// x * delta_b or y * delta_a would not fit in 63 signed bits.
    BresenhamWalker(std::int64_t delta_a, std::int64_t delta_b, std::int64_t x, std::int64_t y);

    /// Moves y onto the line at the current x; returns the number of unit
    /// adjustments made.
    std::int64_t normalize();

    /// Advances x by one.
    void step();

    bool normalized() const noexcept;

    std::int64_t delta_a() const noexcept { return delta_a_; }
    std::int64_t delta_b() const noexcept { return delta_b_; }
    std::int64_t x() const noexcept { return x_; }
    std::int64_t y() const noexcept { return y_; }
    std::int64_t residual() const noexcept { return r_; }

private:
    std::int64_t delta_a_;
    std::int64_t delta_b_;
    std::int64_t x_;
    std::int64_t y_;
    std::int64_t r_;
};

struct RefineResult {
    std::int64_t j = 0;
    std::int64_t iterations = 0;
    /// Final j fell outside the supplied interval, i.e. the interval did not
    /// contain the compensated clock.
    bool bounds_violated = false;
};

/// Walks from (i - l, lb), l = interval.width(), to x = i. Iterations count
/// the normalization adjustments plus the l x-steps. The result is
/// round-half-up(i * delta_b / delta_a) whatever interval is supplied; a wrong
/// interval only costs iterations and raises bounds_violated.
/// Throws Error(invalid_slope) unless 0 <= delta_b < delta_a, and
/// Error(invalid_argument) for i < 0 or an empty interval.
RefineResult refine(std::int64_t i, std::int64_t delta_a, std::int64_t delta_b,
                    const CandidateInterval& interval);

/// round-half-up(i * D / A), exactly.
std::int64_t oracle_nearest(std::int64_t i, std::int64_t D, std::int64_t A);

enum class CompensationCase { identity, case1, case2 };

std::string_view to_string(CompensationCase kind) noexcept;

struct CompResult {
    std::int64_t j = 0;
    std::int64_t iterations = 0;
    Method method = Method::practical;
    Precision precision = Precision::binary32;
    CompensationCase kind = CompensationCase::identity;
    bool bounds_violated = false;
    /// Interval handed to refine; for case 2 it brackets i * (D - A) / A.
    /// [i, i] for the identity case.
    CandidateInterval interval;
};

/// Skew-compensated clock for hardware clock i and slope D/A.
///   D == A: identity.
///   D <  A: interval for (i, D, A), refine with delta_a = A, delta_b = D.
///   D >  A: interval for (i, D - A, A), refine with delta_a = A,
///           delta_b = D - A, then j = i + result.
/// Throws Error(skew_out_of_range) unless 0 < D < 2A, Error(invalid_argument)
/// for i < 0 or A <= 0.
CompResult compensate(std::int64_t i, std::int64_t D, std::int64_t A, Method method, Precision precision,
                      const Rational& eps_coeff = default_eps_coeff(),
                      EvalOrder order = EvalOrder::product_first);

/// floor of the working-precision estimate of i * D / A.
std::int64_t naive_compensate(std::int64_t i, std::int64_t D, std::int64_t A, Precision precision,
                              EvalOrder order = EvalOrder::product_first);

}  // namespace skewcomp
