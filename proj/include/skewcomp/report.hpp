#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "skewcomp/experiment.hpp"

namespace skewcomp {

/// Exact decimal scientific notation with `digits` digits after the point,
/// rounded half away from zero: -4.9663e-01, 0.0000e+00.
std::string format_scientific(const Rational& q, int digits = 4);

struct RunMetadata {
    std::string command;
    std::string version;
    std::uint64_t seed = 0;
    std::size_t samples = 0;
    std::int64_t D = 0;
    Rational range_ppm;
    Rational eps_coeff;
    EvalOrder order = EvalOrder::product_first;
    /// Extra key/value lines, emitted after the fixed keys.
    std::vector<std::pair<std::string, std::string>> extra;
};

/// Fixed column orders of the CSV outputs.
inline constexpr const char* bounds_csv_header =
    "method,precision,i,dlb_min,dlb_max,dlb_avg,dub_min,dub_max,dub_avg";
inline constexpr const char* compensation_csv_header =
    "algorithm,method,precision,i,err_min,err_max,err_avg,iter_min,iter_max,iter_avg,violations";

// CSV: '#'-prefixed "key=value" metadata lines, the header, then one line per
// row. Integers are exact, averages use format_scientific.
void write_bounds_csv(std::ostream& os, const RunMetadata& meta, const std::vector<BoundsRow>& rows);
void write_compensation_csv(std::ostream& os, const RunMetadata& meta, const std::vector<CompensationRow>& rows);

// JSON: {"metadata": {...}, "rows": [...]} with the CSV column names as keys.
void write_bounds_json(std::ostream& os, const RunMetadata& meta, const std::vector<BoundsRow>& rows);
void write_compensation_json(std::ostream& os, const RunMetadata& meta, const std::vector<CompensationRow>& rows);

}  // namespace skewcomp
