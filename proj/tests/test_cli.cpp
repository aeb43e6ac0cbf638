#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "skewcomp/cli.hpp"

using namespace skewcomp;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome invoke(std::vector<std::string> args)
{
    args.insert(args.begin(), "skewcomp");
    std::vector<const char*> argv;
    for (const std::string& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST(Parse, Decimal)
{
    EXPECT_EQ(cli::parse_decimal("1e-7"), Rational(Integer(1), Integer(10'000'000)));
    EXPECT_EQ(cli::parse_decimal("-2.5"), Rational(Integer(-5), Integer(2)));
    EXPECT_EQ(cli::parse_decimal("1.5E3"), Rational(1500));
    EXPECT_EQ(cli::parse_decimal(".25"), Rational(Integer(1), Integer(4)));
    EXPECT_FALSE(cli::parse_decimal("").has_value());
    EXPECT_FALSE(cli::parse_decimal("1e").has_value());
    EXPECT_FALSE(cli::parse_decimal("abc").has_value());
    EXPECT_FALSE(cli::parse_decimal("1.2.3").has_value());
    EXPECT_FALSE(cli::parse_decimal("1e99999").has_value());
}

TEST(Parse, IntegerLiteralAndList)
{
    EXPECT_EQ(cli::parse_integer_literal("1e9"), 1'000'000'000);
    EXPECT_EQ(cli::parse_integer_literal("1000"), 1000);
    EXPECT_EQ(cli::parse_integer_literal("-7"), -7);
    EXPECT_FALSE(cli::parse_integer_literal("1.5").has_value());
    EXPECT_FALSE(cli::parse_integer_literal("1e30").has_value());
    const auto list = cli::parse_integer_list("1e6,1e7,100");
    ASSERT_TRUE(list.has_value());
    EXPECT_EQ(*list, (std::vector<std::int64_t>{1'000'000, 10'000'000, 100}));
    EXPECT_FALSE(cli::parse_integer_list("1e6,,2").has_value());
    EXPECT_FALSE(cli::parse_integer_list("x").has_value());
}

TEST(Parse, ThreadsFromEnv)
{
    ::setenv("SKEWCOMP_THREADS", "3", 1);
    EXPECT_EQ(cli::threads_from_env(), 3u);
    ::setenv("SKEWCOMP_THREADS", "zero", 1);
    EXPECT_EQ(cli::threads_from_env(), 0u);
    ::unsetenv("SKEWCOMP_THREADS");
    EXPECT_EQ(cli::threads_from_env(), 0u);
}

TEST(Cli, BoundsText)
{
    const Outcome o = invoke({"bounds", "--i", "1e8", "--D", "1e6", "--A", "1000050", "--precision", "binary32"});
    EXPECT_EQ(o.code, cli::exit_ok);
    EXPECT_NE(o.out.find("lb=99994984 ub=99995032 ref_lb=99994970 ref_ub=99995031 dlb=-14 dub=1"),
              std::string::npos)
        << o.out;
}

TEST(Cli, BoundsJson)
{
    const Outcome o = invoke({"bounds", "--i", "1e8", "--D", "1e6", "--A", "1000050", "--method", "practical",
                              "--precision", "binary32", "--format", "json"});
    ASSERT_EQ(o.code, cli::exit_ok);
    const nlohmann::json doc = nlohmann::json::parse(o.out);
    EXPECT_EQ(doc["lb"], 99994960);
    EXPECT_EQ(doc["dlb"], 10);
    EXPECT_EQ(doc["case"], "case1");
}

TEST(Cli, Compensate)
{
    Outcome o = invoke({"compensate", "--i", "1e9", "--D", "1000050", "--A", "1e6", "--method", "approximate"});
    EXPECT_EQ(o.code, cli::exit_ok);
    EXPECT_NE(o.out.find("j=1000050000"), std::string::npos) << o.out;
    EXPECT_NE(o.out.find("case=case2"), std::string::npos) << o.out;
    EXPECT_NE(o.out.find("err=0"), std::string::npos) << o.out;

    o = invoke({"compensate", "--i", "10", "--D", "1", "--A", "2", "--format", "json", "--strict"});
    ASSERT_EQ(o.code, cli::exit_ok);
    EXPECT_EQ(nlohmann::json::parse(o.out)["j"], 5);
}

TEST(Cli, UsageErrors)
{
    EXPECT_EQ(invoke({}).code, cli::exit_usage);
    EXPECT_EQ(invoke({"bogus"}).code, cli::exit_usage);
    EXPECT_EQ(invoke({"bounds", "--i", "x", "--D", "1", "--A", "2"}).code, cli::exit_usage);
    EXPECT_EQ(invoke({"bounds", "--i", "1", "--D", "2", "--A", "2"}).code, cli::exit_usage);
    EXPECT_EQ(invoke({"bounds", "--i", "1", "--D", "1"}).code, cli::exit_usage);
    const Outcome range = invoke({"compensate", "--i", "1", "--D", "5", "--A", "2"});
    EXPECT_EQ(range.code, cli::exit_usage);
    EXPECT_NE(range.err.find("SkewOutOfRange"), std::string::npos) << range.err;
    EXPECT_EQ(invoke({"compensate", "--i", "1", "--D", "1", "--A", "2", "--method", "nope"}).code, cli::exit_usage);
    EXPECT_EQ(invoke({"table2", "--samples", "0"}).code, cli::exit_usage);
    EXPECT_EQ(invoke({"table3", "--format", "xml"}).code, cli::exit_usage);
}

TEST(Cli, HelpAndVersion)
{
    const Outcome help = invoke({"--help"});
    EXPECT_EQ(help.code, cli::exit_ok);
    EXPECT_NE(help.out.find("table2"), std::string::npos);
    EXPECT_EQ(invoke({"table3", "--help"}).code, cli::exit_ok);
    const Outcome version = invoke({"--version"});
    EXPECT_EQ(version.code, cli::exit_ok);
    EXPECT_FALSE(version.out.empty());
}

TEST(Cli, Table2Csv)
{
    const Outcome o = invoke({"table2", "-n", "500", "--i", "1e6,1e9", "--strict"});
    ASSERT_EQ(o.code, cli::exit_ok) << o.err;
    EXPECT_NE(o.out.find("# seed=42"), std::string::npos);
    EXPECT_NE(o.out.find("method,precision,i,dlb_min"), std::string::npos);
    EXPECT_NE(o.out.find("\ntheoretical,binary64,1000000000,0,0,0.0000e+00,0,0,0.0000e+00\n"), std::string::npos)
        << o.out;
    EXPECT_NE(o.out.find("\napproximate,binary32,1000000,"), std::string::npos);
}

TEST(Cli, Table3JsonToFile)
{
    const std::string path = ::testing::TempDir() + "skewcomp_table3.json";
    const Outcome o = invoke({"table3", "-n", "300", "--seed", "9", "--i", "1e8", "--format", "json", "-o", path});
    ASSERT_EQ(o.code, cli::exit_ok) << o.err;
    EXPECT_TRUE(o.out.empty());
    std::ifstream in(path);
    const nlohmann::json doc = nlohmann::json::parse(in);
    EXPECT_EQ(doc["metadata"]["seed"], "9");
    ASSERT_EQ(doc["rows"].size(), 3u);
    EXPECT_EQ(doc["rows"][1]["violations"], 0);
    std::remove(path.c_str());
}

TEST(Cli, Table3Reproducible)
{
    const Outcome a = invoke({"table3", "-n", "400", "--i", "1e9"});
    const Outcome b = invoke({"table3", "-n", "400", "--i", "1e9"});
    EXPECT_EQ(a.out, b.out);
    const Outcome c = invoke({"table3", "-n", "400", "--i", "1e9", "--seed", "43"});
    EXPECT_NE(a.out, c.out);
}

TEST(Cli, CustomConfigs)
{
    const Outcome o = invoke({"table2", "-n", "200", "--i", "1e7", "--methods", "practical",
                              "--precisions", "binary32,binary64"});
    ASSERT_EQ(o.code, cli::exit_ok) << o.err;
    EXPECT_NE(o.out.find("\npractical,binary64,10000000,"), std::string::npos);
    EXPECT_EQ(o.out.find("theoretical"), std::string::npos);
    EXPECT_EQ(invoke({"table2", "--methods", "bogus"}).code, cli::exit_usage);
}

TEST(Cli, Selftest)
{
    const Outcome o = invoke({"selftest", "-n", "300"});
    EXPECT_EQ(o.code, cli::exit_ok) << o.out;
    EXPECT_EQ(o.out.find("FAIL"), std::string::npos);
}

namespace {

std::vector<std::string> data_lines(const std::string& text)
{
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
        if (!line.empty() && line.front() != '#')
            out.push_back(line);
    return out;
}

}  // namespace

TEST(Cli, Table2MatchesGolden)
{
    std::ifstream golden(std::string(SKEWCOMP_GOLDEN_DIR) + "/table2_seed42.csv");
    ASSERT_TRUE(golden.good());
    std::stringstream expected;
    expected << golden.rdbuf();
    const Outcome o = invoke({"table2", "--samples", "100000", "--seed", "42", "--i", "1e6,1e7,1e8,1e9"});
    ASSERT_EQ(o.code, cli::exit_ok) << o.err;
    EXPECT_EQ(data_lines(o.out), data_lines(expected.str()));
}

TEST(Cli, Table2CsvAndJsonAgree)
{
    const std::vector<std::string> args = {"table2", "-n", "2000", "--seed", "5", "--i", "1e7,1e9"};
    std::vector<std::string> json_args = args;
    json_args.insert(json_args.end(), {"--format", "json"});
    const Outcome csv = invoke(args);
    const Outcome js = invoke(json_args);
    ASSERT_EQ(csv.code, cli::exit_ok);
    ASSERT_EQ(js.code, cli::exit_ok);

    const std::vector<std::string> lines = data_lines(csv.out);
    const nlohmann::json doc = nlohmann::json::parse(js.out);
    ASSERT_EQ(doc["rows"].size() + 1, lines.size());
    const std::vector<std::string> keys = {"dlb_min", "dlb_max", "dlb_avg", "dub_min", "dub_max", "dub_avg"};
    for (std::size_t r = 0; r < doc["rows"].size(); ++r) {
        const nlohmann::json& row = doc["rows"][r];
        std::vector<std::string> cells;
        std::stringstream ss(lines[r + 1]);
        std::string cell;
        while (std::getline(ss, cell, ','))
            cells.push_back(cell);
        ASSERT_EQ(cells.size(), 9u);
        EXPECT_EQ(cells[0], row["method"]);
        EXPECT_EQ(cells[1], row["precision"]);
        EXPECT_EQ(std::stoll(cells[2]), row["i"].get<std::int64_t>());
        for (std::size_t k = 0; k < keys.size(); ++k)
            EXPECT_EQ(std::stod(cells[3 + k]), row[keys[k]].get<double>()) << keys[k];
    }
}
