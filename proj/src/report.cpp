#include "skewcomp/report.hpp"

#include <cmath>
#include <ostream>
#include <string>

#include <json.hpp>

namespace skewcomp {

namespace {

Integer pow10(long exp)
{
    Integer out;
    mpz_ui_pow_ui(out.get_mpz_t(), 10, static_cast<unsigned long>(exp));
    return out;
}

Rational pow10_rational(long exp)
{
    return exp >= 0 ? Rational(pow10(exp)) : Rational(Integer(1), pow10(-exp));
}

std::string integer_text(const Rational& q)
{
    return q.num().get_str();
}

std::vector<std::pair<std::string, std::string>> metadata_lines(const RunMetadata& meta)
{
    std::vector<std::pair<std::string, std::string>> lines = {
        {"command", meta.command},
        {"version", meta.version},
        {"seed", std::to_string(meta.seed)},
        {"samples", std::to_string(meta.samples)},
        {"D", std::to_string(meta.D)},
        {"range_ppm", meta.range_ppm.str()},
        {"distribution", sample_distribution_note()},
        {"eps_coeff", meta.eps_coeff.str()},
        {"t_hat_order", std::string(to_string(meta.order))},
    };
    lines.insert(lines.end(), meta.extra.begin(), meta.extra.end());
    return lines;
}

void write_metadata_comments(std::ostream& os, const RunMetadata& meta)
{
    for (const auto& [key, value] : metadata_lines(meta))
        os << "# " << key << '=' << value << '\n';
}

nlohmann::json metadata_json(const RunMetadata& meta)
{
    nlohmann::json out = nlohmann::json::object();
    for (const auto& [key, value] : metadata_lines(meta))
        out[key] = value;
    return out;
}

// Same digits the CSV prints, as a JSON number.
nlohmann::json avg_json(const Rational& q)
{
    return std::stod(format_scientific(q));
}

nlohmann::json integer_json(const Rational& q)
{
    return static_cast<std::int64_t>(q.num().get_si());
}

}  // namespace

std::string format_scientific(const Rational& q, int digits)
{
    if (q.is_zero())
        return "0." + std::string(static_cast<std::size_t>(digits), '0') + "e+00";

    const Rational a = q.abs();
    long exp = static_cast<long>(std::floor(std::log10(a.to_double())));
    while (a < pow10_rational(exp))
        --exp;
    while (a >= pow10_rational(exp + 1))
        ++exp;

    Integer m = round_half_up_rat(a * pow10_rational(digits - exp));
    if (m == pow10(digits + 1)) {
        m /= 10;
        ++exp;
    }

    const std::string text = m.get_str();
    std::string out = q.sign() < 0 ? "-" : "";
    out += text.substr(0, 1);
    if (digits > 0)
        out += "." + text.substr(1);
    out += exp < 0 ? "e-" : "e+";
    const std::string e = std::to_string(exp < 0 ? -exp : exp);
    out += e.size() < 2 ? "0" + e : e;
    return out;
}

void write_bounds_csv(std::ostream& os, const RunMetadata& meta, const std::vector<BoundsRow>& rows)
{
    write_metadata_comments(os, meta);
    os << bounds_csv_header << '\n';
    for (const BoundsRow& row : rows) {
        os << to_string(row.method) << ',' << to_string(row.precision) << ',' << row.i << ','
           << integer_text(row.dlb.min) << ',' << integer_text(row.dlb.max) << ',' << format_scientific(row.dlb.avg)
           << ',' << integer_text(row.dub.min) << ',' << integer_text(row.dub.max) << ','
           << format_scientific(row.dub.avg) << '\n';
    }
}

void write_compensation_csv(std::ostream& os, const RunMetadata& meta, const std::vector<CompensationRow>& rows)
{
    write_metadata_comments(os, meta);
    os << compensation_csv_header << '\n';
    for (const CompensationRow& row : rows) {
        const bool naive = row.config.algorithm == Algorithm::naive;
        os << to_string(row.config.algorithm) << ',' << (naive ? "" : to_string(row.config.method)) << ','
           << to_string(row.config.precision) << ',' << row.i << ',' << integer_text(row.err.min) << ','
           << integer_text(row.err.max) << ',' << format_scientific(row.err.avg) << ',';
        if (row.iterations) {
            os << integer_text(row.iterations->min) << ',' << integer_text(row.iterations->max) << ','
               << format_scientific(row.iterations->avg);
        } else {
            os << ",,";
        }
        os << ',' << row.violations << '\n';
    }
}

void write_bounds_json(std::ostream& os, const RunMetadata& meta, const std::vector<BoundsRow>& rows)
{
    nlohmann::json doc;
    doc["metadata"] = metadata_json(meta);
    doc["rows"] = nlohmann::json::array();
    for (const BoundsRow& row : rows) {
        doc["rows"].push_back({
            {"method", to_string(row.method)},
            {"precision", to_string(row.precision)},
            {"i", row.i},
            {"dlb_min", integer_json(row.dlb.min)},
            {"dlb_max", integer_json(row.dlb.max)},
            {"dlb_avg", avg_json(row.dlb.avg)},
            {"dub_min", integer_json(row.dub.min)},
            {"dub_max", integer_json(row.dub.max)},
            {"dub_avg", avg_json(row.dub.avg)},
        });
    }
    os << doc.dump(2) << '\n';
}

void write_compensation_json(std::ostream& os, const RunMetadata& meta, const std::vector<CompensationRow>& rows)
{
    nlohmann::json doc;
    doc["metadata"] = metadata_json(meta);
    doc["rows"] = nlohmann::json::array();
    for (const CompensationRow& row : rows) {
        const bool naive = row.config.algorithm == Algorithm::naive;
        nlohmann::json item = {
            {"algorithm", to_string(row.config.algorithm)},
            {"method", naive ? nlohmann::json(nullptr) : nlohmann::json(to_string(row.config.method))},
            {"precision", to_string(row.config.precision)},
            {"i", row.i},
            {"err_min", integer_json(row.err.min)},
            {"err_max", integer_json(row.err.max)},
            {"err_avg", avg_json(row.err.avg)},
            {"iter_min", nullptr},
            {"iter_max", nullptr},
            {"iter_avg", nullptr},
            {"violations", row.violations},
        };
        if (row.iterations) {
            item["iter_min"] = integer_json(row.iterations->min);
            item["iter_max"] = integer_json(row.iterations->max);
            item["iter_avg"] = avg_json(row.iterations->avg);
        }
        doc["rows"].push_back(std::move(item));
    }
    os << doc.dump(2) << '\n';
}

}  // namespace skewcomp
