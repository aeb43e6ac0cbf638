#include "skewcomp/compensator.hpp"

#include <cmath>
#include <string>

#include "skewcomp/error.hpp"

namespace skewcomp {

namespace {

constexpr __int128 product_limit = __int128(1) << 62;

bool product_fits(std::int64_t a, std::int64_t b)
{
    const __int128 p = static_cast<__int128>(a) * b;
    return -product_limit < p && p < product_limit;
}

}  // namespace

BresenhamWalker::BresenhamWalker(std::int64_t delta_a, std::int64_t delta_b, std::int64_t x, std::int64_t y)
    : delta_a_(delta_a), delta_b_(delta_b), x_(x), y_(y), r_(0)
{
    if (!(0 <= delta_b && delta_b < delta_a))
        throw Error(ErrorCode::invalid_slope, "line walk needs 0 <= delta_b < delta_a, got delta_a=" +
                                                  std::to_string(delta_a) + " delta_b=" + std::to_string(delta_b));
    if (!product_fits(x, delta_b) || !product_fits(y, delta_a))
        throw Error(ErrorCode::overflow_risk, "start point (" + std::to_string(x) + ", " + std::to_string(y) +
                                                  ") overflows the residual");
    r_ = x * delta_b - y * delta_a;
}

std::int64_t BresenhamWalker::normalize()
{
    std::int64_t moves = 0;
    // 2r >= delta_a and 2r < -delta_a, written without forming 2r
    while (r_ >= delta_a_ - r_) {
        ++y_;
        r_ -= delta_a_;
        ++moves;
    }
    while (r_ < -delta_a_ - r_) {
        --y_;
        r_ += delta_a_;
        ++moves;
    }
    return moves;
}

void BresenhamWalker::step()
{
    ++x_;
    r_ += delta_b_;
    if (r_ >= delta_a_ - r_) {
        ++y_;
        r_ -= delta_a_;
    }
}

bool BresenhamWalker::normalized() const noexcept
{
    return -delta_a_ - r_ <= r_ && r_ < delta_a_ - r_;
}

RefineResult refine(std::int64_t i, std::int64_t delta_a, std::int64_t delta_b, const CandidateInterval& interval)
{
    if (i < 0)
        throw Error(ErrorCode::invalid_argument, "hardware clock must be nonnegative");
    if (interval.lb > interval.ub)
        throw Error(ErrorCode::invalid_argument, "empty candidate interval");
    if (!(0 <= delta_b && delta_b < delta_a))
        throw Error(ErrorCode::invalid_slope, "refine needs 0 <= delta_b < delta_a");
    if (!product_fits(i, delta_b))
        throw Error(ErrorCode::overflow_risk, "i * delta_b does not fit in 63 bits");

    const std::int64_t l = interval.width();
    // A start left of the origin (tiny i, wide approximate interval) is still
    // a valid line point, so it is not rejected.
    BresenhamWalker walker(delta_a, delta_b, i - l, interval.lb);

    RefineResult out;
    out.iterations = walker.normalize();
    for (std::int64_t k = 0; k < l; ++k) {
        walker.step();
        ++out.iterations;
    }
    out.j = walker.y();
    out.bounds_violated = !interval.contains(out.j);
    return out;
}

std::int64_t oracle_nearest(std::int64_t i, std::int64_t D, std::int64_t A)
{
    if (i < 0 || D <= 0 || A <= 0)
        throw Error(ErrorCode::invalid_argument, "oracle needs i >= 0, D > 0, A > 0");
    const Rational t(Integer(static_cast<long>(i)) * static_cast<long>(D), Integer(static_cast<long>(A)));
    return to_int64(round_half_up_rat(t));
}

std::string_view to_string(CompensationCase kind) noexcept
{
    switch (kind) {
    case CompensationCase::identity: return "identity";
    case CompensationCase::case1: return "case1";
    case CompensationCase::case2: return "case2";
    }
    return "unknown";
}

CompResult compensate(std::int64_t i, std::int64_t D, std::int64_t A, Method method, Precision precision,
                      const Rational& eps_coeff, EvalOrder order)
{
    if (i < 0 || A <= 0)
        throw Error(ErrorCode::invalid_argument, "compensation needs i >= 0 and A > 0");
    if (D <= 0 || D >= 2 * A)
        throw Error(ErrorCode::skew_out_of_range,
                    "need 0 < D < 2A, got D=" + std::to_string(D) + " A=" + std::to_string(A));

    CompResult out;
    out.method = method;
    out.precision = precision;

    if (D == A) {
        out.kind = CompensationCase::identity;
        out.j = i;
        out.interval = {i, i, method, precision};
        return out;
    }

    const bool faster = D < A;
    const std::int64_t delta_b = faster ? D : D - A;
    out.kind = faster ? CompensationCase::case1 : CompensationCase::case2;
    out.interval = candidate_interval(i, delta_b, A, method, precision, eps_coeff, order);

    const RefineResult walk = refine(i, A, delta_b, out.interval);
    out.j = faster ? walk.j : i + walk.j;
    out.iterations = walk.iterations;
    out.bounds_violated = walk.bounds_violated;
    return out;
}

std::int64_t naive_compensate(std::int64_t i, std::int64_t D, std::int64_t A, Precision precision, EvalOrder order)
{
    if (i < 0 || D <= 0 || A <= 0)
        throw Error(ErrorCode::invalid_argument, "naive compensation needs i >= 0, D > 0, A > 0");
    const double t = compute_t_hat(i, D, A, precision, order);
    return to_int64(Integer(std::floor(t)));
}

}  // namespace skewcomp
