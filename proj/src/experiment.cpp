#include "skewcomp/experiment.hpp"

#include <algorithm>
#include <exception>
#include <random>
#include <thread>

#include "skewcomp/compensator.hpp"
#include "skewcomp/error.hpp"

namespace skewcomp {

namespace {

constexpr std::int64_t ppm_granularity = 1'000'000'000;  // skew steps per ppm
constexpr std::int64_t skew_scale = 1'000'000'000'000'000;  // steps per unit skew

unsigned resolve_threads(unsigned requested)
{
    if (requested != 0)
        return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

// Runs fn(begin, end) -> Acc over contiguous chunks of [0, n) and merges the
// partial results in chunk order.
template <typename Acc, typename Fn>
Acc parallel_reduce(std::size_t n, unsigned threads, Fn fn)
{
    threads = std::min<std::size_t>(resolve_threads(threads), std::max<std::size_t>(1, n / 256));
    if (threads <= 1)
        return fn(std::size_t{0}, n);

    std::vector<Acc> parts(threads);
    std::vector<std::exception_ptr> failures(threads);
    std::vector<std::thread> pool;
    pool.reserve(threads);
    const std::size_t chunk = (n + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
        const std::size_t begin = std::min(n, t * chunk);
        const std::size_t end = std::min(n, begin + chunk);
        pool.emplace_back([&, t, begin, end] {
            try {
                parts[t] = fn(begin, end);
            } catch (...) {
                failures[t] = std::current_exception();
            }
        });
    }
    for (auto& th : pool)
        th.join();
    for (const auto& failure : failures)
        if (failure)
            std::rethrow_exception(failure);

    Acc total = std::move(parts.front());
    for (unsigned t = 1; t < threads; ++t)
        total.merge(parts[t]);
    return total;
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t span)
{
    // Largest multiple of span that fits in 2^64; draws at or above it are rejected.
    const unsigned __int128 range = static_cast<unsigned __int128>(1) << 64;
    const unsigned __int128 limit = range - range % span;
    for (;;) {
        const std::uint64_t draw = rng();
        if (draw < limit)
            return draw % span;
    }
}

struct BoundsAcc {
    IntStats dlb;
    IntStats dub;
    std::int64_t identity = 0;

    void merge(const BoundsAcc& other)
    {
        dlb.merge(other.dlb);
        dub.merge(other.dub);
        identity += other.identity;
    }
};

struct CompensationAcc {
    IntStats err;
    IntStats iterations;
    std::int64_t violations = 0;

    void merge(const CompensationAcc& other)
    {
        err.merge(other.err);
        iterations.merge(other.iterations);
        violations += other.violations;
    }
};

Rational rational_of(__int128 v)
{
    const bool negative = v < 0;
    unsigned __int128 m = negative ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
    Integer out = static_cast<unsigned long>(m >> 64);
    out <<= 64;
    out += static_cast<unsigned long>(m & 0xFFFF'FFFF'FFFF'FFFFull);
    return Rational(negative ? Integer(-out) : out);
}

}  // namespace

std::vector<ClockSample> generate_samples(std::uint64_t seed, std::size_t n, std::int64_t D,
                                          const Rational& range_ppm)
{
    if (D <= 0)
        throw Error(ErrorCode::invalid_argument, "D must be positive");
    if (range_ppm.sign() < 0)
        throw Error(ErrorCode::invalid_argument, "skew range must be nonnegative");
    if (range_ppm >= Rational(1'000'000))
        throw Error(ErrorCode::invalid_argument, "skew range must stay below 10^6 ppm");

    const std::int64_t half_span = to_int64(floor_rat(range_ppm * Rational(ppm_granularity)));
    const std::uint64_t span = 2 * static_cast<std::uint64_t>(half_span) + 1;

    std::mt19937_64 rng(seed);
    std::vector<ClockSample> samples;
    samples.reserve(n);
    for (std::size_t s = 0; s < n; ++s) {
        const std::int64_t k = static_cast<std::int64_t>(uniform_below(rng, span)) - half_span;
        // A = floor((2 D (scale + k) + scale) / (2 scale))
        const __int128 numerator = static_cast<__int128>(D) * (skew_scale + k);
        const __int128 a = (2 * numerator + skew_scale) / (2 * static_cast<__int128>(skew_scale));
        samples.push_back({D, static_cast<std::int64_t>(a), Rational(Integer(static_cast<long>(k)),
                                                                     Integer(static_cast<long>(ppm_granularity)))});
    }
    return samples;
}

std::string sample_distribution_note()
{
    return "skew_ppm=k/1e9 with k uniform on [-floor(range_ppm*1e9), floor(range_ppm*1e9)] "
           "(mt19937_64(seed), rejection sampling); A=round_half_up(D*(1+skew_ppm*1e-6))";
}

void IntStats::add(std::int64_t value)
{
    if (count_ == 0) {
        min_ = max_ = value;
    } else {
        min_ = std::min(min_, value);
        max_ = std::max(max_, value);
    }
    sum_ += value;
    ++count_;
}

void IntStats::merge(const IntStats& other)
{
    if (other.count_ == 0)
        return;
    if (count_ == 0) {
        *this = other;
        return;
    }
    min_ = std::min(min_, other.min_);
    max_ = std::max(max_, other.max_);
    sum_ += other.sum_;
    count_ += other.count_;
}

StatSummary IntStats::summary() const
{
    if (count_ == 0)
        throw Error(ErrorCode::invalid_argument, "statistics of an empty set");
    return {Rational(min_), Rational(max_), rational_of(sum_) / Rational(count_), count_};
}

std::vector<BoundConfig> default_bound_configs()
{
    return {
        {Method::theoretical, Precision::binary64},
        {Method::theoretical, Precision::binary32},
        {Method::practical, Precision::binary32},
        {Method::approximate, Precision::binary32},
    };
}

std::vector<BoundsRow> bounds_experiment(const std::vector<ClockSample>& samples,
                                         const std::vector<std::int64_t>& i_list,
                                         const std::vector<BoundConfig>& configs,
                                         const ExperimentOptions& options)
{
    if (samples.empty())
        throw Error(ErrorCode::invalid_argument, "bounds experiment needs samples");

    std::vector<BoundsRow> rows;
    for (const BoundConfig& config : configs) {
        const FloatFormat fmt = format_of(config.precision);
        for (const std::int64_t i : i_list) {
            const BoundsAcc acc = parallel_reduce<BoundsAcc>(
                samples.size(), options.threads, [&](std::size_t begin, std::size_t end) {
                    BoundsAcc part;
                    for (std::size_t s = begin; s < end; ++s) {
                        const ClockSample& sample = samples[s];
                        if (sample.D == sample.A) {
                            ++part.identity;
                            continue;
                        }
                        const std::int64_t delta_b = sample.D < sample.A ? sample.D : sample.D - sample.A;
                        const CandidateInterval candidate =
                            candidate_interval(i, delta_b, sample.A, config.method, config.precision,
                                               options.eps_coeff, options.order);
                        const CandidateInterval reference = reference_interval(i, delta_b, sample.A, fmt);
                        const IntervalDeltas d = interval_deltas(candidate, reference);
                        part.dlb.add(d.dlb);
                        part.dub.add(d.dub);
                    }
                    return part;
                });
            if (acc.dlb.empty())
                throw Error(ErrorCode::invalid_argument, "every sample has D == A; no intervals to compare");
            rows.push_back({config.method, config.precision, i, acc.dlb.summary(), acc.dub.summary(), acc.identity});
        }
    }
    return rows;
}

std::string_view to_string(Algorithm algorithm) noexcept
{
    return algorithm == Algorithm::naive ? "naive" : "bresenham";
}

std::vector<AlgorithmConfig> default_algorithm_configs()
{
    return {
        {Algorithm::naive, Method::reference, Precision::binary32},
        {Algorithm::bresenham, Method::practical, Precision::binary32},
        {Algorithm::bresenham, Method::approximate, Precision::binary32},
    };
}

std::vector<CompensationRow> compensation_experiment(const std::vector<ClockSample>& samples,
                                                     const std::vector<std::int64_t>& i_list,
                                                     const std::vector<AlgorithmConfig>& configs,
                                                     const ExperimentOptions& options)
{
    if (samples.empty())
        throw Error(ErrorCode::invalid_argument, "compensation experiment needs samples");

    std::vector<CompensationRow> rows;
    for (const AlgorithmConfig& config : configs) {
        for (const std::int64_t i : i_list) {
            const CompensationAcc acc = parallel_reduce<CompensationAcc>(
                samples.size(), options.threads, [&](std::size_t begin, std::size_t end) {
                    CompensationAcc part;
                    for (std::size_t s = begin; s < end; ++s) {
                        const ClockSample& sample = samples[s];
                        const std::int64_t reference =
                            naive_compensate(i, sample.D, sample.A, Precision::binary64, options.order);
                        if (config.algorithm == Algorithm::naive) {
                            part.err.add(reference -
                                         naive_compensate(i, sample.D, sample.A, config.precision, options.order));
                            continue;
                        }
                        const CompResult r = compensate(i, sample.D, sample.A, config.method, config.precision,
                                                        options.eps_coeff, options.order);
                        part.err.add(reference - r.j);
                        part.iterations.add(r.iterations);
                        if (r.bounds_violated)
                            ++part.violations;
                    }
                    return part;
                });
            CompensationRow row{config, i, acc.err.summary(), std::nullopt, acc.violations};
            if (config.algorithm == Algorithm::bresenham)
                row.iterations = acc.iterations.summary();
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

}  // namespace skewcomp
