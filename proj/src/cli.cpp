#include "skewcomp/cli.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "skewcomp/bounds.hpp"
#include "skewcomp/compensator.hpp"
#include "skewcomp/error.hpp"
#include "skewcomp/experiment.hpp"
#include "skewcomp/float_model.hpp"
#include "skewcomp/report.hpp"

#ifndef SKEWCOMP_VERSION
#define SKEWCOMP_VERSION "0.0.0"
#endif

namespace skewcomp::cli {

std::optional<Rational> parse_decimal(std::string_view text)
{
    std::size_t pos = 0;
    bool negative = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-'))
        negative = text[pos++] == '-';

    std::string digits;
    long frac_digits = 0;
    bool seen_point = false;
    for (; pos < text.size(); ++pos) {
        const char c = text[pos];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            digits += c;
            if (seen_point)
                ++frac_digits;
        } else if (c == '.' && !seen_point) {
            seen_point = true;
        } else {
            break;
        }
    }
    if (digits.empty())
        return std::nullopt;

    long exp = 0;
    if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
        ++pos;
        bool exp_negative = false;
        if (pos < text.size() && (text[pos] == '+' || text[pos] == '-'))
            exp_negative = text[pos++] == '-';
        const std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
            ++pos;
        if (pos == start || pos - start > 4)
            return std::nullopt;
        exp = std::stol(std::string(text.substr(start, pos - start)));
        if (exp_negative)
            exp = -exp;
    }
    if (pos != text.size())
        return std::nullopt;

    Rational value{Integer(digits)};
    value *= power(Rational(10), exp - frac_digits);
    return negative ? -value : value;
}

std::optional<std::int64_t> parse_integer_literal(std::string_view text)
{
    const std::optional<Rational> value = parse_decimal(text);
    if (!value || !value->is_integer() || !value->num().fits_slong_p())
        return std::nullopt;
    return static_cast<std::int64_t>(value->num().get_si());
}

std::optional<std::vector<std::int64_t>> parse_integer_list(std::string_view text)
{
    std::vector<std::int64_t> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = text.find(',', start);
        const std::string_view item = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
        const std::optional<std::int64_t> value = parse_integer_literal(item);
        if (!value)
            return std::nullopt;
        out.push_back(*value);
        if (comma == std::string_view::npos)
            break;
        start = comma + 1;
    }
    return out;
}

unsigned threads_from_env()
{
    const char* raw = std::getenv("SKEWCOMP_THREADS");
    if (raw == nullptr)
        return 0;
    const std::optional<std::int64_t> value = parse_integer_literal(raw);
    if (!value || *value < 1 || *value > 4096)
        return 0;
    return static_cast<unsigned>(*value);
}

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::int64_t require_integer(const std::string& flag, const std::string& text)
{
    const std::optional<std::int64_t> value = parse_integer_literal(text);
    if (!value)
        throw UsageError(flag + " expects an integer (plain or like 1e9), got '" + text + "'");
    return *value;
}

Rational require_decimal(const std::string& flag, const std::string& text)
{
    const std::optional<Rational> value = parse_decimal(text);
    if (!value)
        throw UsageError(flag + " expects a decimal number, got '" + text + "'");
    return *value;
}

std::vector<std::string> split(const std::string& text)
{
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(item);
    return out;
}

Method require_method(const std::string& text)
{
    const std::optional<Method> m = parse_method(text);
    if (!m)
        throw UsageError("unknown method '" + text + "' (theoretical, practical, approximate, reference)");
    return *m;
}

Precision require_precision(const std::string& text)
{
    const std::optional<Precision> p = parse_precision(text);
    if (!p)
        throw UsageError("unknown precision '" + text + "' (binary32, binary64)");
    return *p;
}

Precision require_working_precision(const std::string& text)
{
    const Precision p = require_precision(text);
    if (p == Precision::exact)
        throw UsageError("precision must be binary32 or binary64");
    return p;
}

EvalOrder require_order(const std::string& text)
{
    const std::optional<EvalOrder> o = parse_eval_order(text);
    if (!o)
        throw UsageError("unknown order '" + text + "' (product_first, quotient_first)");
    return *o;
}

// Flags shared by the single-shot commands.
struct PointArgs {
    std::string i;
    std::string D;
    std::string A;
    std::string method;
    std::string precision;
    std::string eps = "1e-7";
    std::string order = "product_first";
    std::string format = "text";
};

void add_point_flags(CLI::App* cmd, PointArgs& args)
{
    cmd->add_option("--i", args.i, "hardware clock i")->required();
    cmd->add_option("--D", args.D, "numerator D of the slope estimate D/A")->required();
    cmd->add_option("--A", args.A, "denominator A of the slope estimate D/A")->required();
    cmd->add_option("--method", args.method, "theoretical | practical | approximate | reference")
        ->capture_default_str();
    cmd->add_option("--precision", args.precision, "binary32 | binary64")->capture_default_str();
    cmd->add_option("--eps", args.eps, "margin coefficient of the approximate bounds")->capture_default_str();
    cmd->add_option("--order", args.order, "t_hat evaluation order: product_first | quotient_first")
        ->capture_default_str();
    cmd->add_option("--format", args.format, "text | json")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
}

// Flags shared by the table commands.
struct TableArgs {
    std::string samples = "1e5";
    std::string seed = "42";
    std::string D = "1e6";
    std::string range = "100";
    std::string i_list = "1e6,1e7,1e8,1e9";
    std::string methods;
    std::string precisions;
    std::string eps = "1e-7";
    std::string order = "product_first";
    std::string format = "csv";
    std::string output;
    bool strict = false;
};

void add_table_flags(CLI::App* cmd, TableArgs& args)
{
    cmd->add_option("--samples,-n", args.samples, "number of skew samples")->capture_default_str();
    cmd->add_option("--seed", args.seed, "RNG seed")->capture_default_str();
    cmd->add_option("--D", args.D, "fixed D of every sample")->capture_default_str();
    cmd->add_option("--range", args.range, "skew range in ppm (uniform on [-range, range])")->capture_default_str();
    cmd->add_option("--i", args.i_list, "comma-separated hardware clocks")->capture_default_str();
    cmd->add_option("--methods", args.methods, "comma-separated bound methods");
    cmd->add_option("--precisions", args.precisions, "comma-separated working precisions");
    cmd->add_option("--eps", args.eps, "margin coefficient of the approximate bounds")->capture_default_str();
    cmd->add_option("--order", args.order, "t_hat evaluation order")->capture_default_str();
    cmd->add_option("--format", args.format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd->add_option("--output,-o", args.output, "output file (default stdout)");
    cmd->add_flag("--strict", args.strict, "exit 2 if a bound check fails");
}

struct TableSetup {
    RunMetadata meta;
    std::vector<ClockSample> samples;
    std::vector<std::int64_t> i_list;
    ExperimentOptions options;
};

TableSetup prepare_table(const std::string& command, const TableArgs& args)
{
    TableSetup setup;
    const std::int64_t n = require_integer("--samples", args.samples);
    const std::int64_t seed = require_integer("--seed", args.seed);
    const std::int64_t D = require_integer("--D", args.D);
    if (n <= 0)
        throw UsageError("--samples must be positive");
    if (D <= 0)
        throw UsageError("--D must be positive");
    if (seed < 0)
        throw UsageError("--seed must be nonnegative");
    const Rational range = require_decimal("--range", args.range);
    if (range.sign() < 0)
        throw UsageError("--range must be nonnegative");
    const std::optional<std::vector<std::int64_t>> i_list = parse_integer_list(args.i_list);
    if (!i_list || i_list->empty())
        throw UsageError("--i expects comma-separated integers, got '" + args.i_list + "'");
    for (std::int64_t i : *i_list)
        if (i < 0)
            throw UsageError("--i values must be nonnegative");

    setup.options.eps_coeff = require_decimal("--eps", args.eps);
    if (setup.options.eps_coeff.sign() < 0)
        throw UsageError("--eps must be nonnegative");
    setup.options.order = require_order(args.order);
    setup.options.threads = threads_from_env();
    setup.i_list = *i_list;
    setup.samples = generate_samples(static_cast<std::uint64_t>(seed), static_cast<std::size_t>(n), D, range);

    setup.meta.command = command;
    setup.meta.version = SKEWCOMP_VERSION;
    setup.meta.seed = static_cast<std::uint64_t>(seed);
    setup.meta.samples = static_cast<std::size_t>(n);
    setup.meta.D = D;
    setup.meta.range_ppm = range;
    setup.meta.eps_coeff = setup.options.eps_coeff;
    setup.meta.order = setup.options.order;
    return setup;
}

// Writes to --output when given, otherwise to `out`.
void emit(const std::string& path, std::ostream& out, const std::function<void(std::ostream&)>& writer)
{
    if (path.empty()) {
        writer(out);
        return;
    }
    std::ofstream file(path);
    if (!file)
        throw UsageError("cannot open output file '" + path + "'");
    writer(file);
}

int run_bounds(const PointArgs& args, std::ostream& out)
{
    const std::int64_t i = require_integer("--i", args.i);
    const std::int64_t D = require_integer("--D", args.D);
    const std::int64_t A = require_integer("--A", args.A);
    const Method method = require_method(args.method);
    const Precision precision = require_working_precision(args.precision);
    const Rational eps = require_decimal("--eps", args.eps);
    const EvalOrder order = require_order(args.order);
    if (A <= 0 || D <= 0 || D == A || D >= 2 * A)
        throw UsageError("bounds need 0 < D < 2A and D != A");

    // Case 2 brackets the second component i(D - A)/A.
    const bool case2 = D > A;
    const std::int64_t delta_b = case2 ? D - A : D;
    const CandidateInterval candidate = candidate_interval(i, delta_b, A, method, precision, eps, order);
    const CandidateInterval reference = reference_interval(i, delta_b, A, format_of(precision));
    const IntervalDeltas deltas = interval_deltas(candidate, reference);

    if (args.format == "json") {
        const nlohmann::json doc = {
            {"method", to_string(method)}, {"precision", to_string(precision)},
            {"i", i}, {"D", D}, {"A", A}, {"case", case2 ? "case2" : "case1"},
            {"lb", candidate.lb}, {"ub", candidate.ub},
            {"ref_lb", reference.lb}, {"ref_ub", reference.ub},
            {"dlb", deltas.dlb}, {"dub", deltas.dub},
        };
        out << doc.dump(2) << '\n';
    } else {
        out << "method=" << to_string(method) << " precision=" << to_string(precision) << " case="
            << (case2 ? "case2" : "case1") << " lb=" << candidate.lb << " ub=" << candidate.ub
            << " ref_lb=" << reference.lb << " ref_ub=" << reference.ub << " dlb=" << deltas.dlb
            << " dub=" << deltas.dub << '\n';
    }
    return exit_ok;
}

int run_compensate(const PointArgs& args, bool strict, std::ostream& out)
{
    const std::int64_t i = require_integer("--i", args.i);
    const std::int64_t D = require_integer("--D", args.D);
    const std::int64_t A = require_integer("--A", args.A);
    const Method method = require_method(args.method);
    const Precision precision = require_working_precision(args.precision);
    const Rational eps = require_decimal("--eps", args.eps);
    const EvalOrder order = require_order(args.order);

    const CompResult r = compensate(i, D, A, method, precision, eps, order);
    const std::int64_t oracle = oracle_nearest(i, D, A);
    const std::int64_t err = oracle - r.j;

    if (args.format == "json") {
        const nlohmann::json doc = {
            {"j", r.j}, {"iterations", r.iterations}, {"case", to_string(r.kind)},
            {"method", to_string(method)}, {"precision", to_string(precision)},
            {"lb", r.interval.lb}, {"ub", r.interval.ub},
            {"oracle", oracle}, {"err", err}, {"bounds_violated", r.bounds_violated},
        };
        out << doc.dump(2) << '\n';
    } else {
        out << "j=" << r.j << " iterations=" << r.iterations << " case=" << to_string(r.kind)
            << " lb=" << r.interval.lb << " ub=" << r.interval.ub << " oracle=" << oracle << " err=" << err
            << " bounds_violated=" << (r.bounds_violated ? "true" : "false") << '\n';
    }
    if (strict && (r.bounds_violated || err != 0))
        return exit_check_failed;
    return exit_ok;
}

int run_table2(const TableArgs& args, std::ostream& out, std::ostream& err)
{
    TableSetup setup = prepare_table("table2", args);

    std::vector<BoundConfig> configs;
    if (args.methods.empty() && args.precisions.empty()) {
        configs = default_bound_configs();
    } else {
        const std::string methods = args.methods.empty() ? "theoretical,practical,approximate" : args.methods;
        const std::string precisions = args.precisions.empty() ? "binary32" : args.precisions;
        for (const std::string& m : split(methods))
            for (const std::string& p : split(precisions))
                configs.push_back({require_method(m), require_working_precision(p)});
    }

    const std::vector<BoundsRow> rows = bounds_experiment(setup.samples, setup.i_list, configs, setup.options);
    setup.meta.extra.emplace_back("identity_samples_skipped", std::to_string(rows.front().identity_skipped));
    setup.meta.extra.emplace_back("dlb", "reference_lb - lb");
    setup.meta.extra.emplace_back("dub", "ub - reference_ub");

    emit(args.output, out, [&](std::ostream& os) {
        if (args.format == "json")
            write_bounds_json(os, setup.meta, rows);
        else
            write_bounds_csv(os, setup.meta, rows);
    });

    if (args.strict) {
        for (const BoundsRow& row : rows) {
            if (row.method == Method::practical && (row.dlb.min.sign() < 0 || row.dub.min.sign() < 0)) {
                err << "practical bounds cut into the reference interval at i=" << row.i << '\n';
                return exit_check_failed;
            }
        }
    }
    return exit_ok;
}

int run_table3(const TableArgs& args, std::ostream& out, std::ostream& err)
{
    TableSetup setup = prepare_table("table3", args);

    std::vector<AlgorithmConfig> configs;
    if (args.methods.empty() && args.precisions.empty()) {
        configs = default_algorithm_configs();
    } else {
        const std::string methods = args.methods.empty() ? "practical,approximate" : args.methods;
        const std::string precisions = args.precisions.empty() ? "binary32" : args.precisions;
        for (const std::string& p : split(precisions))
            configs.push_back({Algorithm::naive, Method::reference, require_working_precision(p)});
        for (const std::string& m : split(methods))
            for (const std::string& p : split(precisions))
                configs.push_back({Algorithm::bresenham, require_method(m), require_working_precision(p)});
    }

    const std::vector<CompensationRow> rows =
        compensation_experiment(setup.samples, setup.i_list, configs, setup.options);
    setup.meta.extra.emplace_back("err", "floor(binary64 t_hat) - j");
    setup.meta.extra.emplace_back("iterations", "normalization adjustments + x steps");

    emit(args.output, out, [&](std::ostream& os) {
        if (args.format == "json")
            write_compensation_json(os, setup.meta, rows);
        else
            write_compensation_csv(os, setup.meta, rows);
    });

    if (args.strict) {
        for (const CompensationRow& row : rows) {
            if (row.violations > 0) {
                err << row.violations << " bound violations for " << to_string(row.config.method) << " at i="
                    << row.i << '\n';
                return exit_check_failed;
            }
        }
    }
    return exit_ok;
}

// Quick versions of the invariant suites.
int run_selftest(std::int64_t n, std::uint64_t seed, std::ostream& out)
{
    std::mt19937_64 rng(seed);
    bool all_ok = true;
    auto report = [&](const std::string& name, bool ok, const std::string& detail) {
        out << (ok ? "PASS " : "FAIL ") << name << (detail.empty() ? "" : "  (" + detail + ")") << '\n';
        all_ok = all_ok && ok;
    };

    {
        bool ok = true;
        for (const int p : {11, 24, 53}) {
            const FloatFormat fmt{2, p};
            const Rational u = unit_roundoff(fmt);
            ok = ok && is_in_format(Rational(1) - u, fmt) && is_in_format(Rational(1) + Rational(2) * u, fmt) &&
                 !is_in_format(Rational(1) + u, fmt);
        }
        report("representability of 1-u, 1+2u (and not 1+u)", ok, "p in {11, 24, 53}");
    }

    {
        const FloatFormat fmt = FloatFormat::binary32();
        const CoefficientPair c = theoretical_coefficients(fmt);
        std::uniform_int_distribution<long> mantissa(0, (1L << 40) - 1);
        std::uniform_int_distribution<long> exponent(-30, 30);
        std::int64_t violations = 0;
        for (std::int64_t k = 0; k < n; ++k) {
            auto draw = [&](bool positive) {
                long m = mantissa(rng);
                if (positive && m == 0)
                    m = 1;
                return Rational(Integer(m), Integer(1L << 40)) * power(Rational(2), exponent(rng));
            };
            const Rational x = draw(false);
            const Rational y = draw(false);
            const Rational z = draw(true);
            const Rational t = x * y / z;
            for (const EvalOrder order : {EvalOrder::product_first, EvalOrder::quotient_first}) {
                const Rational fl = emulate_t_hat(x, y, z, fmt, order);
                if (fl < c.lower * t || fl > c.upper * t)
                    ++violations;
            }
        }
        report("fl(t) within [c_lo t, c_hi t] (binary32)", violations == 0,
               std::to_string(n) + " triples, " + std::to_string(violations) + " violations");
    }

    {
        std::uniform_int_distribution<std::int64_t> clock(0, 1'000'000'000);
        std::uniform_int_distribution<std::int64_t> denominator(1, 2'000'000);
        std::int64_t mismatches = 0;
        std::int64_t shift_failures = 0;
        for (std::int64_t k = 0; k < n; ++k) {
            const std::int64_t i = clock(rng);
            const std::int64_t A = denominator(rng);
            const std::int64_t D = std::uniform_int_distribution<std::int64_t>(1, 2 * A - 1)(rng);
            const std::int64_t expected = oracle_nearest(i, D, A);
            for (const Method m : {Method::theoretical, Method::practical, Method::approximate})
                for (const Precision p : {Precision::binary32, Precision::binary64}) {
                    const CompResult r = compensate(i, D, A, m, p);
                    if (!r.bounds_violated && r.j != expected)
                        ++mismatches;
                }
            if (D > A && i + oracle_nearest(i, D - A, A) != expected)
                ++shift_failures;
        }
        report("compensate == nearest oracle", mismatches == 0,
               std::to_string(n) + " draws x 6 configs, " + std::to_string(mismatches) + " mismatches");
        report("case 2 shift identity", shift_failures == 0, "");
    }

    {
        const std::vector<ClockSample> samples =
            generate_samples(seed, static_cast<std::size_t>(n), 1'000'000, Rational(100));
        const std::vector<std::int64_t> i_list = {1'000'000, 10'000'000, 100'000'000, 1'000'000'000};
        ExperimentOptions options;
        options.threads = threads_from_env();
        const std::vector<BoundsRow> rows =
            bounds_experiment(samples, i_list, {{Method::practical, Precision::binary32}}, options);
        bool ok = true;
        for (const BoundsRow& row : rows)
            ok = ok && row.dlb.min.sign() >= 0 && row.dub.min.sign() >= 0;
        report("practical binary32 bounds contain the reference", ok, std::to_string(n) + " samples");
    }

    return all_ok ? exit_ok : exit_check_failed;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Clock skew compensation with guaranteed floating-point bounds", "skewcomp"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(SKEWCOMP_VERSION));

    PointArgs bounds_args;
    bounds_args.method = "theoretical";
    bounds_args.precision = "binary64";
    CLI::App* bounds_cmd = app.add_subcommand("bounds", "candidate interval for one (i, D, A) against the exact reference");
    add_point_flags(bounds_cmd, bounds_args);

    PointArgs comp_args;
    comp_args.method = "practical";
    comp_args.precision = "binary32";
    bool comp_strict = false;
    CLI::App* comp_cmd = app.add_subcommand("compensate", "skew-compensated clock j for one (i, D, A)");
    add_point_flags(comp_cmd, comp_args);
    comp_cmd->add_flag("--strict", comp_strict, "exit 2 if the interval missed j or j differs from the oracle");

    TableArgs t2_args;
    CLI::App* t2_cmd = app.add_subcommand("table2", "bound deltas against the exact reference over random skews");
    add_table_flags(t2_cmd, t2_args);

    TableArgs t3_args;
    CLI::App* t3_cmd = app.add_subcommand("table3", "compensation errors and iteration counts over random skews");
    add_table_flags(t3_cmd, t3_args);

    std::string self_samples = "2000";
    std::string self_seed = "1";
    CLI::App* self_cmd = app.add_subcommand("selftest", "run the invariant checks at small scale");
    self_cmd->add_option("--samples,-n", self_samples, "draws per check")->capture_default_str();
    self_cmd->add_option("--seed", self_seed, "RNG seed")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForVersion&) {
        out << SKEWCOMP_VERSION << '\n';
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return exit_usage;
    }

    try {
        if (*bounds_cmd)
            return run_bounds(bounds_args, out);
        if (*comp_cmd)
            return run_compensate(comp_args, comp_strict, out);
        if (*t2_cmd)
            return run_table2(t2_args, out, err);
        if (*t3_cmd)
            return run_table3(t3_args, out, err);
        if (*self_cmd) {
            const std::int64_t n = require_integer("--samples", self_samples);
            const std::int64_t seed = require_integer("--seed", self_seed);
            if (n <= 0 || seed < 0)
                throw UsageError("selftest needs --samples > 0 and --seed >= 0");
            return run_selftest(n, static_cast<std::uint64_t>(seed), out);
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }
    return exit_usage;
}

}  // namespace skewcomp::cli
