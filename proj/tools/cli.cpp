#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include "spheremin/errors.hpp"
#include "spheremin/minima.hpp"
#include "spheremin/transfer.hpp"
#include "spheremin/verify.hpp"

namespace spheremin::cli {

namespace {

std::int64_t parse_int(const std::string& s, const char* what) {
    std::int64_t v = 0;
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || ptr != end) throw InvalidArgument(std::string("invalid ") + what + ": '" + s + "'");
    return v;
}

double parse_real(const std::string& s, const char* what) {
    // strtod accepts forms from_chars<double> on older toolchains does not
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v)) {
        throw InvalidArgument(std::string("invalid ") + what + ": '" + s + "'");
    }
    return v;
}

std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string cell_text(const Cell& c) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
                return "";
            } else if constexpr (std::is_same_v<T, std::int64_t>) {
                return std::to_string(v);
            } else if constexpr (std::is_same_v<T, double>) {
                return format_real(v);
            } else if constexpr (std::is_same_v<T, bool>) {
                return v ? "true" : "false";
            } else {
                return v;
            }
        },
        c);
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + '"';
}

Cell error_bound_cell(const MinResult& r) {
    if (r.error_bound) return *r.error_bound;
    return std::string("unknown");
}

void warn(const MinResult& r, std::ostream& err) {
    for (Hypothesis h : r.warnings) {
        if (h == Hypothesis::tail) {
            err << "warning: condition (2) unverified, no L^p exponent known for 1 - F\n";
        }
    }
}

MinResult compute_min(const std::string& command, const RunConfig& cfg, std::int64_t n, bool sphere) {
    if (command == "nmin") return nmin(n, cfg.tol);
    if (command == "emin") return emin(n, cfg.tol);
    if (command == "expected-min") return expected_min(parse_distribution(cfg.dist), n, cfg.tol);
    if (command == "asymptotic") {
        return sphere ? emin_asymptotic(n) : asymptotic_min(parse_distribution(cfg.dist), n);
    }
    throw InvalidArgument("unknown command '" + command + "'");
}

const std::vector<std::string>& sweep_columns() {
    static const std::vector<std::string> cols = {"n", "value", "error_bound", "method", "scaled"};
    return cols;
}

Cell min_column(const std::string& col, const MinResult& r) {
    if (col == "n") return r.n;
    if (col == "value") return r.value;
    if (col == "error_bound") return error_bound_cell(r);
    if (col == "method") return std::string(to_string(r.method));
    if (col == "scaled") return (static_cast<double>(r.n) + 1.0) * r.value;
    throw InvalidArgument("unknown column '" + col + "'");
}

Table min_table(const std::string& command, const RunConfig& cfg, const std::vector<std::int64_t>& ns,
                const std::vector<std::string>& columns, bool sphere, std::ostream& err) {
    Table t{columns, {}};
    for (std::int64_t n : ns) {
        const MinResult r = compute_min(command, cfg, n, sphere);
        warn(r, err);
        std::vector<Cell> row;
        for (const auto& col : columns) row.push_back(min_column(col, r));
        t.rows.push_back(std::move(row));
    }
    return t;
}

Table sphere_mean_table(const RunConfig& cfg) {
    const auto f = find_builtin(cfg.fn);
    if (!f) throw InvalidArgument("unknown function '" + cfg.fn + "'");
    SamplingOptions opts;
    opts.workers = cfg.workers;
    Table t{{"n", "function", "route", "point", "std_error", "samples"}, {}};
    auto add = [&](const char* route, const Estimate& e) {
        t.rows.push_back({cfg.n, f->name, std::string(route), e.point, e.std_error, e.samples});
    };
    if (cfg.route == "gaussian" || cfg.route == "both") {
        add("gaussian", sphere_mean_from_gaussian(*f, cfg.n, cfg.samples, cfg.seed, opts));
    }
    if (cfg.route == "direct" || cfg.route == "both") {
        add("direct", sphere_mean_direct(*f, cfg.n, cfg.samples, cfg.seed, opts));
    }
    return t;
}

Table verify_table(const VerifyReport& report) {
    Table t{{"check", "measured", "reference", "tolerance", "passed"}, {}};
    for (const auto& c : report.checks) t.rows.push_back({c.name, c.measured, c.reference, c.tolerance, c.passed});
    return t;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) parts.push_back(item);
    if (!s.empty() && s.back() == sep) parts.emplace_back();
    return parts;
}

}  // namespace

std::vector<std::int64_t> NRange::values() const {
    std::vector<std::int64_t> out;
    for (std::int64_t n = start; n <= stop;) {
        out.push_back(n);
        if (multiplicative) {
            if (n > stop / step) break;
            n *= step;
        } else {
            if (n > stop - step) break;
            n += step;
        }
    }
    return out;
}

NRange parse_n_range(const std::string& text) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) throw InvalidArgument("n-range must be start:stop:step, got '" + text + "'");
    NRange r;
    r.start = parse_int(parts[0], "n-range start");
    r.stop = parse_int(parts[1], "n-range stop");
    std::string step = parts[2];
    if (!step.empty() && (step[0] == 'x' || step[0] == '*')) {
        r.multiplicative = true;
        step.erase(0, 1);
    } else if (!step.empty() && step[0] == '+') {
        step.erase(0, 1);
    }
    r.step = parse_int(step, "n-range step");
    if (r.start < 1) throw InvalidArgument("n-range start must be >= 1");
    if (r.stop < r.start) throw InvalidArgument("n-range stop must be >= start");
    if (r.multiplicative ? r.step < 2 : r.step < 1) throw InvalidArgument("n-range step must grow n");
    return r;
}

Distribution parse_distribution(const std::string& spec) {
    const auto colon = spec.find(':');
    const std::string name = spec.substr(0, colon);
    const bool has_param = colon != std::string::npos;
    auto param = [&](const char* what) {
        if (!has_param) throw InvalidArgument("distribution '" + name + "' needs a parameter, e.g. " + name + ":1");
        return parse_real(spec.substr(colon + 1), what);
    };
    auto no_param = [&] {
        if (has_param) throw InvalidArgument("distribution '" + name + "' takes no parameter");
    };
    if (name == "half-normal") {
        no_param();
        return half_normal();
    }
    if (name == "uniform01") {
        no_param();
        return uniform01();
    }
    if (name == "exponential") return exponential(param("rate"));
    if (name == "power-law") return power_law(param("exponent"));
    if (name == "heavy-tail") return heavy_tail(param("alpha"));
    throw InvalidArgument("unknown distribution '" + spec + "'");
}

void write_table(const Table& table, Format format, std::ostream& out) {
    switch (format) {
        case Format::csv: {
            for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
            out << '\n';
            for (const auto& row : table.rows) {
                for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_escape(cell_text(row[i]));
                out << '\n';
            }
            return;
        }
        case Format::json: {
            auto arr = nlohmann::ordered_json::array();
            for (const auto& row : table.rows) {
                nlohmann::ordered_json obj;
                for (std::size_t i = 0; i < row.size(); ++i) {
                    std::visit(
                        [&](const auto& v) {
                            using T = std::decay_t<decltype(v)>;
                            if constexpr (std::is_same_v<T, std::monostate>) {
                                obj[table.columns[i]] = nullptr;
                            } else {
                                obj[table.columns[i]] = v;
                            }
                        },
                        row[i]);
                }
                arr.push_back(std::move(obj));
            }
            out << arr.dump(2) << '\n';
            return;
        }
        case Format::table: {
            std::vector<std::size_t> width(table.columns.size());
            for (std::size_t i = 0; i < width.size(); ++i) width[i] = table.columns[i].size();
            std::vector<std::vector<std::string>> text;
            for (const auto& row : table.rows) {
                auto& line = text.emplace_back();
                for (std::size_t i = 0; i < row.size(); ++i) {
                    line.push_back(cell_text(row[i]));
                    width[i] = std::max(width[i], line.back().size());
                }
            }
            auto emit = [&](const std::vector<std::string>& cells) {
                for (std::size_t i = 0; i < cells.size(); ++i) {
                    out << (i ? "  " : "");
                    if (i + 1 == cells.size()) {
                        out << cells[i];
                    } else {
                        out << std::left << std::setw(static_cast<int>(width[i])) << cells[i];
                    }
                }
                out << '\n';
            };
            emit(table.columns);
            for (const auto& line : text) emit(line);
            return;
        }
    }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    std::string n_range_text;
    std::string columns_text;
    bool sphere = false;

    CLI::App app{"Expected minima of iid variables and spherical means of homogeneous functions", "spheremin"};
    app.set_config("--config");
    app.require_subcommand(1);

    const std::map<std::string, Format> formats{{"csv", Format::csv}, {"json", Format::json}, {"table", Format::table}};
    auto common = [&](CLI::App* sub) {
        sub->add_option("--format", cfg.format, "csv, json or table")
            ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
        sub->add_option("--output", cfg.output, "write data to this file instead of standard output");
    };
    auto quadrature_opts = [&](CLI::App* sub) {
        sub->add_option("--tol", cfg.tol, "absolute quadrature tolerance in (0, 1e-2]");
    };
    auto sampling_opts = [&](CLI::App* sub) {
        sub->add_option("--samples", cfg.samples, "Monte Carlo sample count (>= 2)");
        sub->add_option("--seed", cfg.seed, "random seed");
        sub->add_option("--workers", cfg.workers, "sampling threads; results depend on (seed, workers)");
    };

    for (const char* name : {"emin", "nmin"}) {
        auto* sub = app.add_subcommand(name, std::string(name == std::string("emin")
                                                              ? "expected smallest |coordinate| on the unit sphere"
                                                              : "expected min |X_i| for iid Normal(0, 1/2)"));
        sub->add_option("--n", cfg.n, "number of variables / dimension")->required();
        quadrature_opts(sub);
        common(sub);
    }
    {
        auto* sub = app.add_subcommand("expected-min", "E[min of n iid draws] by survival-power quadrature");
        sub->add_option("--n", cfg.n)->required();
        sub->add_option("--dist", cfg.dist, "distribution spec")->required();
        quadrature_opts(sub);
        common(sub);
    }
    {
        auto* sub = app.add_subcommand("asymptotic", "large-n law 1/(f(0)(n+1))");
        sub->add_option("--n", cfg.n)->required();
        auto* dist = sub->add_option("--dist", cfg.dist, "distribution spec");
        sub->add_flag("--sphere", sphere, "sphere version Gamma(n/2)/Gamma((n+1)/2) sqrt(pi)/(2(n+1))")
            ->excludes(dist);
        common(sub);
    }
    {
        auto* sub = app.add_subcommand("sphere-mean", "spherical mean of a built-in homogeneous function");
        sub->add_option("--n", cfg.n)->required();
        sub->add_option("--fn", cfg.fn, "min-abs, max-abs, sum-abs, sum-squares, abs-first");
        sub->add_option("--route", cfg.route, "gaussian, direct or both")
            ->check(CLI::IsMember({"gaussian", "direct", "both"}));
        sampling_opts(sub);
        common(sub);
    }
    {
        auto* sub = app.add_subcommand("verify", "cross-validation suite; exit 1 on any failure");
        sub->add_option("--samples", cfg.samples, "Monte Carlo samples per check");
        sub->add_option("--seed", cfg.seed, "random seed");
        common(sub);
    }
    {
        auto* sub = app.add_subcommand("sweep", "tabulate a quantity over a range of n");
        sub->add_option("--command", cfg.sweep_command, "emin, nmin, expected-min or asymptotic")
            ->required()
            ->check(CLI::IsMember({"emin", "nmin", "expected-min", "asymptotic"}));
        sub->add_option("--n-range", n_range_text, "start:stop:step, step xK multiplies")->required();
        sub->add_option("--columns", columns_text, "comma-separated subset of n,value,error_bound,method,scaled");
        sub->add_option("--dist", cfg.dist, "distribution spec");
        sub->add_flag("--sphere", sphere, "asymptotic: use the sphere law");
        quadrature_opts(sub);
        common(sub);
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitParseError;
    }

    try {
        cfg.command = app.get_subcommands().front()->get_name();
        if (!(cfg.tol > 0.0 && cfg.tol <= 1e-2)) throw InvalidTolerance("--tol must lie in (0, 1e-2]");
        if (cfg.n < 1) throw InvalidArgument("--n must be >= 1");

        Table table;
        bool verify_failed = false;
        if (cfg.command == "sweep") {
            cfg.n_range = parse_n_range(n_range_text);
            cfg.columns = columns_text.empty() ? std::vector<std::string>{"n", "value", "error_bound", "method"}
                                               : split(columns_text, ',');
            for (const auto& c : cfg.columns) {
                const auto& ok = sweep_columns();
                if (std::find(ok.begin(), ok.end(), c) == ok.end()) throw InvalidArgument("unknown column '" + c + "'");
            }
            table = min_table(cfg.sweep_command, cfg, cfg.n_range->values(), cfg.columns, sphere, err);
        } else if (cfg.command == "sphere-mean") {
            if (cfg.samples < 2) throw InvalidArgument("--samples must be >= 2");
            table = sphere_mean_table(cfg);
        } else if (cfg.command == "verify") {
            if (cfg.samples < 2) throw InvalidArgument("--samples must be >= 2");
            const VerifyReport report = run_verification({cfg.samples, cfg.seed});
            table = verify_table(report);
            verify_failed = !report.all_passed();
            const auto failed = std::count_if(report.checks.begin(), report.checks.end(),
                                              [](const VerifyCheck& c) { return !c.passed; });
            err << "verify: " << report.checks.size() - static_cast<std::size_t>(failed) << "/" << report.checks.size()
                << " checks passed\n";
        } else {
            table = min_table(cfg.command, cfg, {cfg.n}, {"n", "value", "error_bound", "method"}, sphere, err);
        }

        if (cfg.output) {
            std::ofstream file(*cfg.output, std::ios::binary);
            if (!file) throw std::runtime_error("cannot open output file '" + *cfg.output + "'");
            write_table(table, cfg.format, file);
        } else {
            write_table(table, cfg.format, out);
        }
        return verify_failed ? kExitVerifyFailed : kExitOk;
    } catch (const HypothesisViolated& e) {
        err << "hypothesis violated: " << e.what() << '\n';
        return kExitHypothesis;
    } catch (const NonConvergent& e) {
        err << "nonconvergent: " << e.what() << '\n';
        return kExitNonConvergent;
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << '\n';
        return kExitParseError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitVerifyFailed;
    }
}

}  // namespace spheremin::cli
