#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "spheremin/errors.hpp"
#include "spheremin/minima.hpp"

using namespace spheremin;
using namespace spheremin::cli;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome invoke(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

std::filesystem::path temp_path(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("spheremin_test_" + name);
}

}  // namespace

TEST_CASE("emin emits one row") {
    const auto r = invoke({"emin", "--n", "10"});
    CHECK(r.code == kExitOk);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0] == std::vector<std::string>{"n", "value", "error_bound", "method"});
    CHECK(rows[1][0] == "10");
    CHECK(std::strtod(rows[1][1].c_str(), nullptr) == emin(10).value);
    CHECK(rows[1][3] == "quadrature");
}

TEST_CASE("emin on the zero sphere") {
    const auto rows = parse_csv(invoke({"emin", "--n", "1"}).out);
    CHECK(std::abs(std::strtod(rows[1][1].c_str(), nullptr) - 1.0) <= 1e-12);
}

TEST_CASE("expected-min with a distribution") {
    const auto r = invoke({"expected-min", "--dist", "exponential:1", "--n", "7"});
    CHECK(r.code == kExitOk);
    CHECK(std::strtod(parse_csv(r.out)[1][1].c_str(), nullptr) == doctest::Approx(0.14285714285714285).epsilon(1e-12));
}

TEST_CASE("hypothesis violation exits 4 and names condition (1)") {
    const auto r = invoke({"asymptotic", "--dist", "power-law:2", "--n", "10"});
    CHECK(r.code == kExitHypothesis);
    CHECK(r.err.find("condition (1)") != std::string::npos);
    CHECK(r.out.empty());
}

TEST_CASE("divergent expectation exits 3") {
    const auto r = invoke({"expected-min", "--dist", "heavy-tail:0.5", "--n", "1"});
    CHECK(r.code == kExitNonConvergent);
    CHECK(r.out.empty());
}

TEST_CASE("asymptotic output marks the error bound unknown") {
    const auto r = invoke({"asymptotic", "--dist", "exponential:2", "--n", "9"});
    CHECK(r.code == kExitOk);
    const auto rows = parse_csv(r.out);
    CHECK(std::strtod(rows[1][1].c_str(), nullptr) == doctest::Approx(0.05));
    CHECK(rows[1][2] == "unknown");
    CHECK(rows[1][3] == "asymptotic");

    const auto s = invoke({"asymptotic", "--sphere", "--n", "1"});
    CHECK(std::strtod(parse_csv(s.out)[1][1].c_str(), nullptr) == doctest::Approx(0.7853981633974483));
}

TEST_CASE("parse errors exit 2") {
    for (const auto& args : std::vector<std::vector<std::string>>{
             {},
             {"bogus"},
             {"emin"},
             {"emin", "--n", "abc"},
             {"emin", "--n", "0"},
             {"emin", "--n", "5", "--tol", "1"},
             {"emin", "--n", "5", "--tol", "0"},
             {"emin", "--n", "5", "--frobnicate"},
             {"emin", "--n", "5", "--format", "xml"},
             {"expected-min", "--n", "5", "--dist", "cauchy"},
             {"expected-min", "--n", "5", "--dist", "exponential"},
             {"expected-min", "--n", "5", "--dist", "exponential:-1"},
             {"sweep", "--command", "nmin", "--n-range", "10:1:x10"},
             {"sweep", "--command", "nmin", "--n-range", "1:10"},
             {"sweep", "--command", "nmin", "--n-range", "1:10:1", "--columns", "n,bogus"},
             {"sweep", "--command", "verify", "--n-range", "1:10:1"},
             {"sphere-mean", "--n", "3", "--fn", "nope"},
             {"sphere-mean", "--n", "3", "--samples", "1"},
             {"sphere-mean", "--n", "3", "--route", "sideways"},
         }) {
        const auto r = invoke(args);
        std::string joined;
        for (const auto& a : args) joined += a + " ";
        INFO(joined);
        CHECK(r.code == kExitParseError);
        CHECK_FALSE(r.err.empty());
    }
}

TEST_CASE("help exits 0") {
    const auto r = invoke({"--help"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("sweep") != std::string::npos);
}

TEST_CASE("n-range parsing") {
    CHECK(parse_n_range("10:100000:x10").values() == std::vector<std::int64_t>{10, 100, 1000, 10000, 100000});
    CHECK(parse_n_range("1:10:3").values() == std::vector<std::int64_t>{1, 4, 7, 10});
    CHECK(parse_n_range("2:9:+4").values() == std::vector<std::int64_t>{2, 6});
    CHECK(parse_n_range("5:5:1").values() == std::vector<std::int64_t>{5});
    CHECK(parse_n_range("3:100:x3").values() == std::vector<std::int64_t>{3, 9, 27, 81});
    CHECK_THROWS_AS(parse_n_range("0:10:1"), InvalidArgument);
    CHECK_THROWS_AS(parse_n_range("1:10:x1"), InvalidArgument);
    CHECK_THROWS_AS(parse_n_range("1:10:0"), InvalidArgument);
    CHECK_THROWS_AS(parse_n_range("a:b:c"), InvalidArgument);
    CHECK_THROWS_AS(parse_n_range("1:10:2:3"), InvalidArgument);
}

TEST_CASE("distribution specs") {
    CHECK(parse_distribution("half-normal").name() == "half-normal");
    CHECK(parse_distribution("uniform01").support_upper() == 1.0);
    CHECK(parse_distribution("exponential:2.5").density_at_zero().value == 2.5);
    CHECK(parse_distribution("power-law:3").cdf(0.5) == 0.125);
    CHECK(parse_distribution("heavy-tail:1").survival(1.0) == 0.5);
    CHECK_THROWS_AS(parse_distribution("half-normal:2"), InvalidArgument);
    CHECK_THROWS_AS(parse_distribution("exponential:abc"), InvalidArgument);
    CHECK_THROWS_AS(parse_distribution("power-law:1"), InvalidArgument);
}

TEST_CASE("sweep exposes the scaled convergence") {
    const auto r = invoke({"sweep", "--command", "nmin", "--n-range", "10:100000:x10", "--columns", "n,value,scaled"});
    CHECK(r.code == kExitOk);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 6);
    CHECK(rows[0] == std::vector<std::string>{"n", "value", "scaled"});
    const std::vector<std::string> ns{"10", "100", "1000", "10000", "100000"};
    double prev = 1.0;
    for (std::size_t i = 0; i < ns.size(); ++i) {
        CHECK(rows[i + 1][0] == ns[i]);
        const double residual = std::abs(std::strtod(rows[i + 1][2].c_str(), nullptr) - 0.88622692545275801);
        CHECK(residual < prev);
        prev = residual;
    }
}

TEST_CASE("sweep defaults and other commands") {
    const auto r = invoke({"sweep", "--command", "asymptotic", "--dist", "uniform01", "--n-range", "1:3:1"});
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0] == std::vector<std::string>{"n", "value", "error_bound", "method"});
    CHECK(std::strtod(rows[3][1].c_str(), nullptr) == 0.25);
    const auto e = invoke({"sweep", "--command", "expected-min", "--dist", "heavy-tail:0.5", "--n-range", "1:3:1"});
    CHECK(e.code == kExitNonConvergent);
}

TEST_CASE("CSV round-trips exactly") {
    const auto r = invoke({"sweep", "--command", "emin", "--n-range", "1:40:3"});
    const auto rows = parse_csv(r.out);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto n = std::stoll(rows[i][0]);
        const auto res = emin(n);
        CHECK(std::strtod(rows[i][1].c_str(), nullptr) == res.value);
        CHECK(std::strtod(rows[i][2].c_str(), nullptr) == *res.error_bound);
    }
}

TEST_CASE("JSON output") {
    const auto r = invoke({"sweep", "--command", "nmin", "--n-range", "1:2:1", "--format", "json"});
    CHECK(r.code == kExitOk);
    const auto doc = nlohmann::json::parse(r.out);
    REQUIRE(doc.size() == 2);
    CHECK(doc[0]["n"] == 1);
    CHECK(doc[1]["value"].get<double>() == nmin(2).value);
    CHECK(doc[0]["method"] == "quadrature");
    const auto a = nlohmann::json::parse(invoke({"asymptotic", "--n", "4", "--format", "json"}).out);
    CHECK(a[0]["error_bound"] == "unknown");
}

TEST_CASE("table output is aligned") {
    const auto r = invoke({"sweep", "--command", "nmin", "--n-range", "1:100:x10", "--format", "table"});
    std::istringstream in(r.out);
    std::string header;
    std::string line;
    std::getline(in, header);
    CHECK(header.rfind("n  ", 0) == 0);
    while (std::getline(in, line)) CHECK(line.find("0.") == header.find("value"));
}

TEST_CASE("--output writes the file and nothing to stdout") {
    const auto path = temp_path("out.csv");
    std::filesystem::remove(path);
    const auto r = invoke({"emin", "--n", "3", "--output", path.string()});
    CHECK(r.code == kExitOk);
    CHECK(r.out.empty());
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str() == invoke({"emin", "--n", "3"}).out);
    std::filesystem::remove(path);
}

TEST_CASE("config file") {
    const auto path = temp_path("config.toml");
    {
        std::ofstream f(path);
        f << "[expected-min]\nn = 7\ndist = \"exponential:1\"\n";
    }
    const auto r = invoke({"--config", path.string(), "expected-min"});
    CHECK(r.code == kExitOk);
    CHECK(r.out == invoke({"expected-min", "--dist", "exponential:1", "--n", "7"}).out);
    std::filesystem::remove(path);
}

TEST_CASE("identical configuration gives identical bytes") {
    const std::vector<std::string> args{"sphere-mean", "--n", "4", "--fn", "max-abs", "--samples", "20000", "--seed", "9"};
    const auto a = invoke(args);
    const auto b = invoke(args);
    CHECK(a.code == kExitOk);
    CHECK(a.out == b.out);
    const auto rows = parse_csv(a.out);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0] == std::vector<std::string>{"n", "function", "route", "point", "std_error", "samples"});
    CHECK(rows[1][2] == "gaussian");
    CHECK(rows[2][2] == "direct");
    CHECK(invoke({"sphere-mean", "--n", "4", "--samples", "20000", "--seed", "10"}).out != invoke({"sphere-mean", "--n", "4", "--samples", "20000", "--seed", "9"}).out);
}

TEST_CASE("sphere-mean single route") {
    const auto r = invoke({"sphere-mean", "--n", "1", "--fn", "min-abs", "--route", "direct", "--samples", "100"});
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 2);
    CHECK(rows[1][3] == "1");
    CHECK(rows[1][4] == "0");
}

TEST_CASE("verify passes with a small sample budget") {
    const auto r = invoke({"verify", "--samples", "20000", "--seed", "7"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find(",false") == std::string::npos);
    CHECK(r.err.find("checks passed") != std::string::npos);
}
