#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "skewcomp/bounds.hpp"
#include "skewcomp/rational.hpp"

namespace skewcomp {

/// One draw of the first-order clock model T = (1 + skew) t without offset.
/// A = round-half-up(D * (1 + skew_ppm * 10^-6)).
struct ClockSample {
    std::int64_t D = 0;
    std::int64_t A = 0;
    Rational skew_ppm;
};

/// Skews are integers k in [-K, K] with K = floor(range_ppm * 10^9), drawn
/// uniformly from std::mt19937_64(seed) by rejection sampling on raw 64-bit
/// outputs, and skew_ppm = k / 10^9. Same (seed, n, D, range) gives the same
/// samples on every platform.
/// Throws Error(invalid_argument) for D <= 0 or range_ppm < 0.
std::vector<ClockSample> generate_samples(std::uint64_t seed, std::size_t n, std::int64_t D,
                                          const Rational& range_ppm);

/// Human-readable description of generate_samples' distribution, for output
/// metadata.
std::string sample_distribution_note();

struct StatSummary {
    Rational min;
    Rational max;
    Rational avg;
    std::int64_t count = 0;
};

/// Exact integer min/max/sum; merging is order-independent.
class IntStats {
public:
    void add(std::int64_t value);
    void merge(const IntStats& other);

    std::int64_t count() const noexcept { return count_; }
    bool empty() const noexcept { return count_ == 0; }

    /// Throws Error(invalid_argument) when empty.
    StatSummary summary() const;

private:
    std::int64_t count_ = 0;
    std::int64_t min_ = 0;
    std::int64_t max_ = 0;
    __int128 sum_ = 0;
};

struct ExperimentOptions {
    Rational eps_coeff = default_eps_coeff();
    EvalOrder order = EvalOrder::product_first;
    /// 0 picks std::thread::hardware_concurrency().
    unsigned threads = 1;
};

struct BoundConfig {
    Method method;
    Precision precision;
};

/// theoretical/binary64, theoretical/binary32, practical/binary32,
/// approximate/binary32
std::vector<BoundConfig> default_bound_configs();

struct BoundsRow {
    Method method;
    Precision precision;
    std::int64_t i;
    StatSummary dlb;
    StatSummary dub;
    /// Samples with D == A, which have no candidate interval.
    std::int64_t identity_skipped = 0;
};

/// Interval deltas against the exact reference of the same working format,
/// one row per (config, i) in config-major order. Samples with D > A use
/// (D - A, A) for both candidate and reference.
std::vector<BoundsRow> bounds_experiment(const std::vector<ClockSample>& samples,
                                         const std::vector<std::int64_t>& i_list,
                                         const std::vector<BoundConfig>& configs,
                                         const ExperimentOptions& options = {});

enum class Algorithm { naive, bresenham };

std::string_view to_string(Algorithm algorithm) noexcept;

struct AlgorithmConfig {
    Algorithm algorithm;
    /// Ignored for naive.
    Method method;
    Precision precision;
};

/// naive/binary32, bresenham practical/binary32, bresenham approximate/binary32
std::vector<AlgorithmConfig> default_algorithm_configs();

struct CompensationRow {
    AlgorithmConfig config;
    std::int64_t i;
    /// err = floor(binary64 estimate of i*D/A) - j
    StatSummary err;
    /// Absent for the naive algorithm.
    std::optional<StatSummary> iterations;
    /// Samples whose candidate interval missed the compensated clock.
    std::int64_t violations = 0;
};

std::vector<CompensationRow> compensation_experiment(const std::vector<ClockSample>& samples,
                                                     const std::vector<std::int64_t>& i_list,
                                                     const std::vector<AlgorithmConfig>& configs,
                                                     const ExperimentOptions& options = {});

}  // namespace skewcomp
