#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "spheremin/distributions.hpp"

namespace spheremin::cli {

// Stable exit-code contract.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitParseError = 2;
inline constexpr int kExitNonConvergent = 3;
inline constexpr int kExitHypothesis = 4;

enum class Format { csv, json, table };

struct NRange {
    std::int64_t start = 1;
    std::int64_t stop = 1;
    std::int64_t step = 1;
    bool multiplicative = false;

    [[nodiscard]] std::vector<std::int64_t> values() const;
};

struct RunConfig {
    std::string command;        // emin, nmin, expected-min, asymptotic, sphere-mean, verify, sweep
    std::string sweep_command;  // for sweep: emin, nmin, expected-min, asymptotic
    std::int64_t n = 1;
    std::optional<NRange> n_range;
    std::string dist = "half-normal";
    std::string fn = "min-abs";
    std::string route = "both";  // sphere-mean: gaussian, direct, both
    std::vector<std::string> columns;
    double tol = 1e-10;
    std::int64_t samples = 1'000'000;
    std::uint64_t seed = 42;
    int workers = 1;
    Format format = Format::csv;
    std::optional<std::string> output;
};

/// "start:stop:step" with step "xK" (multiplicative, K >= 2) or "K" / "+K"
/// (additive). stop is inclusive. Throws InvalidArgument on bad syntax.
NRange parse_n_range(const std::string& text);

/// half-normal, exponential:<rate>, uniform01, power-law:<k>, heavy-tail:<alpha>.
Distribution parse_distribution(const std::string& spec);

using Cell = std::variant<std::monostate, std::int64_t, double, std::string, bool>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

/// CSV: header row then one record per row, reals with 17 significant
/// digits, missing values empty. JSON: array of objects, missing values null.
void write_table(const Table& table, Format format, std::ostream& out);

/// Runs the command line (without the program name). Data goes to `out`
/// (or --output), diagnostics to `err`; returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace spheremin::cli
