#include "fdside/cli.hpp"

#include "oracles.hpp"

#include <catch2/catch_amalgamated.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace fdside::cli;
using Catch::Approx;
using Json = nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run_cli(std::vector<std::string> args)
{
    args.insert(args.begin(), "fdside");
    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

Json mgain_rows(const Run& r)
{
    const Json doc = Json::parse(r.out);
    Json by_scheme;
    for (const auto& row : doc["rows"])
        by_scheme[row["scheme"].get<std::string>()] = row;
    return by_scheme;
}

std::filesystem::path temp_file(const std::string& name)
{
    return std::filesystem::temp_directory_path() / ("fdside_test_" + name);
}

} // namespace

TEST_CASE("region: strong-regime pentagon from dB inputs")
{
    const Run r = run_cli({"region", "--scheme", "bc", "--snr1-db", "10", "--snr2-db", "10", "--inr-db", "17",
                           "--w", "0", "--lambda", "0", "--format", "json"});
    REQUIRE(r.code == 0);
    const Json j = Json::parse(r.out);
    const double inr = std::pow(10.0, 1.7);
    CHECK(j["regime"] == "strong");
    CHECK(j["normalization"] == "per-Wm");
    CHECK(j["pentagon"]["r1_max"].get<double>() == Approx(std::log2(11.0)));
    CHECK(j["pentagon"]["r2_max"].get<double>() == Approx(std::log2(11.0)));
    CHECK(j["pentagon"]["sum_max"].get<double>() == Approx(std::log2(11.0 + inr)));
    CHECK(inr == Approx(50.12).margin(0.01));
}

TEST_CASE("region: outer bounds and metadata")
{
    const Run r = run_cli({"region", "--scheme", "outer-nointerf", "--snr1", "10", "--snr2", "10", "--inr", "5",
                           "--format", "json"});
    REQUIRE(r.code == 0);
    const Json j = Json::parse(r.out);
    CHECK(j["pentagon"]["sum_max"] == "inf");
    CHECK(j["pentagon"]["r1_max"].get<double>() == Approx(std::log2(11.0)));

    const Run csv = run_cli({"region", "--scheme", "outer-nointerf", "--snr1", "10", "--snr2", "10", "--inr", "5"});
    REQUIRE(csv.code == 0);
    CHECK(csv.out.rfind("kind,scheme,regime,normalization,r1,r2,sum,lambda,beta,k\n", 0) == 0);
    CHECK(csv.out.find(",inf,") != std::string::npos);

    const Run genie = run_cli({"region", "--scheme", "outer-genie", "--snr1", "10", "--snr2", "10", "--inr", "50",
                               "--lambda", "0", "--format", "json"});
    REQUIRE(genie.code == 0);
    CHECK(Json::parse(genie.out)["pentagon"]["sum_max"].get<double>() ==
          Approx(oracle::C(10.0 / 51) + oracle::C(60 + 2 * std::sqrt(500.0))));
}

TEST_CASE("region: optimized split emits a tagged frontier")
{
    const Run r = run_cli({"region", "--scheme", "dc", "--snr1", "100", "--snr2", "100", "--inr", "10",
                           "--snr-side", "50", "--w", "1", "--optimize", "--resolution", "0.05", "--format", "json"});
    REQUIRE(r.code == 0);
    const Json j = Json::parse(r.out);
    REQUIRE(j["frontier"].size() > 0);
    CHECK(j["frontier"][0].contains("lambda"));
    CHECK(j["method"] == "grid+golden");
}

TEST_CASE("region: domain and usage errors")
{
    CHECK(run_cli({"region", "--scheme", "ec", "--snr1", "10", "--snr2", "10", "--inr", "5", "--w", "0.5", "--k",
                   "1"})
              .code == kExitDomain);
    CHECK(run_cli({"region", "--scheme", "bc", "--snr1", "10", "--snr1-db", "10", "--snr2", "10", "--inr", "5",
                   "--lambda", "0"})
              .code == kExitUsage);
    CHECK(run_cli({"region", "--scheme", "bc", "--snr1", "10", "--snr2", "10", "--inr", "5", "--lambda", "0.2",
                   "--optimize"})
              .code == kExitUsage);
    CHECK(run_cli({"region", "--scheme", "cc", "--snr1", "10", "--snr2", "10", "--inr", "5"}).code == kExitUsage);
    CHECK(run_cli({"region", "--scheme", "bc", "--snr2", "10", "--inr", "5", "--lambda", "0"}).code == kExitUsage);
    CHECK(run_cli({"region", "--scheme", "bc", "--snr1", "-1", "--snr2", "10", "--inr", "5", "--lambda", "0"}).code ==
          kExitUsage);
    CHECK(run_cli({"region", "--scheme", "zz"}).code == kExitUsage);
    CHECK(run_cli({}).code == kExitUsage);
}

TEST_CASE("region: exponent inputs")
{
    const Run r = run_cli({"region", "--scheme", "outer-genie", "--snr-db", "20", "--mu", "0.5", "--nu", "1", "--w",
                           "1", "--lambda", "0.5", "--format", "json"});
    REQUIRE(r.code == 0);
    const Json j = Json::parse(r.out);
    CHECK(j["params"]["inr"].get<double>() == Approx(10.0));
    CHECK(j["params"]["snr_side"].get<double>() == Approx(100.0));
    CHECK(run_cli({"region", "--scheme", "outer-genie", "--snr1", "10", "--snr2", "10", "--mu", "0.5", "--lambda",
                   "0"})
              .code == kExitUsage);
}

TEST_CASE("sweep: CSV layout, determinism and round trip")
{
    const std::vector<std::string> args{"sweep", "--snr-db", "15", "--w", "1", "--nu", "eq-mu", "--mu", "0:2:0.1"};
    const Run a = run_cli(args);
    const Run b = run_cli(args);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.rfind("mu,scheme,gain,gain_ratio_vs_nosc,optimal_lambda,sum_rate\n", 0) == 0);
    CHECK(a.out.find('\r') == std::string::npos);
    CHECK(reformat_csv(a.out) == a.out);

    const CsvTable t = parse_csv(a.out);
    CHECK(t.rows.size() == 21 * 5);
    for (const auto& row : t.rows) {
        if (std::stod(row[0]) == 0.0 && (row[1] == "bc" || row[1] == "cc" || row[1] == "ec"))
            CHECK(std::stod(row[3]) == Approx(1.0).margin(1e-6));
    }

    const Run j = run_cli({"sweep", "--mu", "0:1:0.5", "--format", "json"});
    REQUIRE(j.code == 0);
    CHECK(reformat_json(j.out) == j.out);
    const Json parsed = Json::parse(j.out);
    CHECK(parsed["rows"].size() == 15);
    CHECK(parsed["nu_policy"] == "eq-mu");
}

TEST_CASE("sweep: figure 7 rows and constant nu")
{
    const Run r = run_cli({"sweep", "--figure", "7", "--nu", "0.5", "--mu", "0:1:0.5"});
    REQUIRE(r.code == 0);
    const CsvTable t = parse_csv(r.out);
    CHECK(t.rows.size() == 3 * 4);
    for (const auto& row : t.rows)
        CHECK(row[1] != "nosc");
}

TEST_CASE("sweep: bad ranges are usage errors")
{
    CHECK(run_cli({"sweep", "--mu", "1:0:0.1"}).code == kExitUsage);
    CHECK(run_cli({"sweep", "--mu", "0:1:0"}).code == kExitUsage);
    CHECK(run_cli({"sweep", "--mu", "0:1"}).code == kExitUsage);
    CHECK(run_cli({"sweep", "--nu", "sometimes"}).code == kExitUsage);
}

TEST_CASE("gap: BC report and reproducibility")
{
    const std::vector<std::string> args{"gap", "--scheme", "bc", "--draws", "2000", "--seed", "7", "--w", "0",
                                        "--format", "json"};
    const Run a = run_cli(args);
    const Run b = run_cli(args);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    const Json j = Json::parse(a.out);
    CHECK(j["max_d_sum"].get<double>() < 2.0);
    CHECK(j["max_d_r1"].get<double>() < 1.0);
    CHECK(j["violations"] == 0);
    CHECK(j["normalization"] == "per-total-bandwidth");
    CHECK(j["worst_draw"].contains("snr1"));
    CHECK(reformat_json(a.out) == a.out);
}

TEST_CASE("gap: DC under its conditions")
{
    const Run r = run_cli({"gap", "--scheme", "dc", "--draws", "1000", "--constrain-conditions", "--format", "json"});
    REQUIRE(r.code == 0);
    const Json j = Json::parse(r.out);
    CHECK(j["max_d_r2"].get<double>() <= 0.5);
    CHECK(j["violations"] == 0);
}

TEST_CASE("mgain: asymptotic tables")
{
    auto rows = mgain_rows(run_cli({"mgain", "--asymptotic", "--mu", "1", "--nu", "1", "--w", "1", "--format", "json"}));
    for (const char* s : {"bc", "cc", "dc", "ec"})
        CHECK(rows[s]["asymptotic_gain"].get<double>() == 2.0);
    CHECK(rows["nosc"]["asymptotic_gain"].get<double>() == 1.0);

    rows = mgain_rows(run_cli({"mgain", "--asymptotic", "--mu", "0.5", "--nu", "0", "--w", "0", "--format", "json"}));
    for (const char* s : {"bc", "cc", "nosc"})
        CHECK(rows[s]["asymptotic_gain"].get<double>() == 1.5);
    // Decode-and-cancel without a side channel is half duplex: min{2, 1 + 0}.
    CHECK(rows["dc"]["asymptotic_gain"].get<double>() == 1.0);
    CHECK(rows["ec"]["asymptotic_gain"].is_null());
    CHECK(rows["ec"]["warning"] == "ec-needs-w-at-least-1");

    rows = mgain_rows(run_cli({"mgain", "--asymptotic", "--mu", "1.5", "--nu", "0.3", "--w", "1", "--format", "json"}));
    CHECK(rows["bc"]["asymptotic_gain"].get<double>() == Approx(1.8));

    const Run frac = run_cli({"mgain", "--mu", "0.5", "--nu", "0.5", "--w", "1.5", "--format", "json"});
    REQUIRE(frac.code == 0);
    CHECK(mgain_rows(frac)["ec"]["warning"] == "non-integer-w");
}

TEST_CASE("mgain: finite column")
{
    const Run r = run_cli({"mgain", "--finite", "--asymptotic", "--snr-db", "60", "--mu", "0.5", "--nu", "0.5",
                           "--w", "1", "--format", "json"});
    REQUIRE(r.code == 0);
    auto rows = mgain_rows(r);
    CHECK(rows["bc"]["finite_gain"].get<double>() > 1.0);
    CHECK(rows["bc"]["finite_gain"].get<double>() <= 2.0);
    CHECK(run_cli({"mgain", "--finite", "--mu", "1"}).code == kExitUsage);
}

TEST_CASE("verify: single suites and the perturbation self-test")
{
    const Run ok = run_cli({"verify", "--suite", "fm-oracle", "--draws", "100", "--seed", "3", "--format", "json"});
    REQUIRE(ok.code == 0);
    const Json j = Json::parse(ok.out);
    CHECK(j["suites"][0]["max_error"].get<double>() <= 2e-3);

    const Run bad = run_cli({"verify", "--suite", "containment", "--draws", "300", "--perturb-bc-r1"});
    CHECK(bad.code == kExitVerificationFailed);
    CHECK(bad.err.find("snr1=") != std::string::npos);

    CHECK(run_cli({"verify", "--suite", "no-such-suite"}).code == kExitUsage);
}

TEST_CASE("verify: default run covers every suite and reports consistently")
{
    const Run r = run_cli({"verify", "--draws", "20", "--format", "json"});
    const Json j = Json::parse(r.out);
    CHECK(j["suites"].size() == 13);
    bool all = true;
    for (const auto& s : j["suites"])
        all = all && (s["passed"].get<bool>() || s["informational"].get<bool>());
    CHECK(j["passed"].get<bool>() == all);
    CHECK(r.code == (all ? kExitOk : kExitVerificationFailed));
}

TEST_CASE("JSON config file with command-line override")
{
    const auto path = temp_file("config.json");
    {
        std::ofstream f(path);
        f << R"({"seed": 7, "format": "json", "gap": {"scheme": "bc", "draws": 500, "w": [0, 1]}})";
    }
    const Run from_file = run_cli({"--config", path.string(), "gap"});
    const Run from_flags =
        run_cli({"gap", "--seed", "7", "--format", "json", "--scheme", "bc", "--draws", "500", "--w", "0,1"});
    REQUIRE(from_file.code == 0);
    CHECK(from_file.out == from_flags.out);

    const Run overridden = run_cli({"--config", path.string(), "gap", "--draws", "300"});
    REQUIRE(overridden.code == 0);
    CHECK(Json::parse(overridden.out)["draws"] == 300);

    {
        std::ofstream f(path);
        f << "{not json";
    }
    CHECK(run_cli({"--config", path.string(), "gap"}).code == kExitUsage);
    std::filesystem::remove(path);
}

TEST_CASE("--out writes the file instead of stdout")
{
    const auto path = temp_file("out.csv");
    const Run r = run_cli({"--out", path.string(), "mgain", "--mu", "1", "--nu", "1", "--w", "1"});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    CHECK(ss.str().rfind("scheme,asymptotic_gain,finite_gain,optimal_lambda,warning\n", 0) == 0);
    CHECK(reformat_csv(ss.str()) == ss.str());
    std::filesystem::remove(path);
}

TEST_CASE("CSV helpers")
{
    CHECK(format_number(1.0 / 3) == "0.333333333333");
    CHECK(format_number(std::numeric_limits<double>::infinity()) == "inf");
    CHECK(format_number(2.0) == "2");
    const CsvTable t = parse_csv("a,b\n1,2\n3,\n");
    REQUIRE(t.rows.size() == 2);
    CHECK(t.rows[1][1].empty());
    CHECK(write_csv(t) == "a,b\n1,2\n3,\n");
    CHECK_THROWS(write_csv(CsvTable{{"a"}, {{"x,y"}}}));
}
