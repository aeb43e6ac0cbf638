#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "skewcomp/rational.hpp"

namespace skewcomp::cli {

/// Exit codes of run().
inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 1;
inline constexpr int exit_check_failed = 2;

/// Entry point of the `skewcomp` tool. Subcommands: bounds, compensate,
/// table2, table3, selftest. Returns exit_usage on bad flags or invalid
/// inputs, exit_check_failed when a requested check fails (--strict,
/// selftest).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Exact decimal literal: "100", "-2.5", "1e-7", "1.5E3".
std::optional<Rational> parse_decimal(std::string_view text);

/// Decimal literal with an integral value that fits in 64 bits: "1e9", "1000".
std::optional<std::int64_t> parse_integer_literal(std::string_view text);

/// Comma-separated integer literals: "1e6,1e7,1e8".
std::optional<std::vector<std::int64_t>> parse_integer_list(std::string_view text);

/// Worker count from SKEWCOMP_THREADS; 0 (hardware concurrency) when unset or
/// unparsable.
unsigned threads_from_env();

}  // namespace skewcomp::cli
