// Acceptance criteria 1-8. One PASS/FAIL line per criterion; exit status is
// nonzero if any criterion fails. argv[1] is the path of the spheremin CLI,
// needed by criterion 8.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "oracles/oracle_values.hpp"
#include "spheremin/errors.hpp"
#include "spheremin/minima.hpp"
#include "spheremin/special.hpp"
#include "spheremin/transfer.hpp"

using namespace spheremin;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

constexpr double kHalfSqrtPi = 0.88622692545275801365;

Outcome criterion1() {
    Outcome o;
    const double e1 = emin(1).value;
    const double e2 = emin(2).value;
    o.detail.precision(17);
    o.detail << "emin(1)=" << e1 << " emin(2)=" << e2 << " circle=" << oracle::kEminCircle;
    o.require(std::abs(e1 - 1.0) <= 1e-12, "emin(1) within 1e-12 of 1");
    o.require(std::abs(e2 - oracle::kEminCircle) <= 1e-10, "emin(2) within 1e-10 of the circle integral");
    return o;
}

Outcome criterion2() {
    Outcome o;
    o.detail.precision(6);
    double prev = INFINITY;
    for (std::int64_t n : {100, 1000, 10000, 100000}) {
        // The residual is ~1.4/n^2, below the default tolerance times (n+1) at
        // large n, so the quadrature runs at a tolerance that resolves it.
        const double np1 = static_cast<double>(n + 1);
        const double tol = 1e-4 / (np1 * np1);
        const double scaled = np1 * nmin(n, tol).value;
        const double residual = std::abs(scaled - kHalfSqrtPi);
        o.detail << " a(" << n << ")=" << residual;
        if (n == 10000) o.require(std::abs(scaled - kHalfSqrtPi) <= 1e-3, "(n+1) nmin(n) within 1e-3 at n=1e4");
        o.require(residual < prev, "residual decreasing at n=" + std::to_string(n));
        prev = residual;
    }
    return o;
}

Outcome criterion3() {
    Outcome o;
    double worst = 0.0;
    for (std::int64_t n : {1, 2, 10, 100, 10000}) {
        for (double rate : {1.0, 3.0}) {
            const double err = std::abs(expected_min(exponential(rate), n).value - 1.0 / (static_cast<double>(n) * rate));
            worst = std::max(worst, err);
            o.require(err <= 1e-9, "exponential:" + std::to_string(rate) + " n=" + std::to_string(n));
        }
        const double err = std::abs(expected_min(uniform01(), n).value - 1.0 / static_cast<double>(n + 1));
        worst = std::max(worst, err);
        o.require(err <= 1e-9, "uniform01 n=" + std::to_string(n));
    }
    o.detail << "max abs error " << worst;
    return o;
}

Outcome criterion4() {
    Outcome o;
    o.detail.precision(10);
    for (const auto& d : {half_normal(), exponential(3.0)}) {
        for (auto [n, band] : {std::pair<std::int64_t, double>{1000, 0.01}, {100000, 0.001}}) {
            const double ratio = asymptotic_min(d, n).value / expected_min(d, n).value;
            o.detail << " " << d.name() << "@" << n << "=" << ratio;
            o.require(ratio >= 1.0 - band && ratio <= 1.0 + band, d.name() + " ratio at n=" + std::to_string(n));
        }
    }
    bool violated = false;
    try {
        asymptotic_min(power_law(2.0), 10);
    } catch (const HypothesisViolated& e) {
        violated = e.which() == Hypothesis::density;
    }
    o.require(violated, "power_law(2) raises HypothesisViolated(density)");
    bool diverged = false;
    try {
        expected_min(heavy_tail(0.5), 1);
    } catch (const NonConvergent&) {
        diverged = true;
    }
    o.require(diverged, "heavy_tail(0.5), n=1 raises NonConvergent");
    return o;
}

Outcome criterion5() {
    Outcome o;
    o.detail.precision(4);
    const auto f = *find_builtin("min-abs");
    for (std::int64_t n : {2, 5, 10, 50}) {
        const double exact = emin(n).value;
        const auto e = sphere_mean_direct(f, n, 1'000'000, 42);
        const double z = std::abs(e.point - exact) / e.std_error;
        o.detail << " z(" << n << ")=" << z;
        o.require(z <= 4.0, "n=" + std::to_string(n));
    }
    return o;
}

Outcome criterion6() {
    Outcome o;
    o.detail.precision(4);
    double worst_z = 0.0;
    for (const auto& f : builtin_functions()) {
        for (std::int64_t n : {2, 3, 10}) {
            const auto r = transfer_identity_check(f, n, 1'000'000, 42);
            worst_z = std::max(worst_z, r.z);
            o.require(r.agree, f.name + " n=" + std::to_string(n));
        }
    }
    double worst = 0.0;
    for (std::int64_t n = 1; n <= 1000; ++n) {
        worst = std::max(worst, std::abs(special::gamma_ratio(n, 2) * (static_cast<double>(n) / 2.0) - 1.0));
    }
    o.require(worst <= 1e-12, "d=2 gamma identity");
    o.detail << "max z " << worst_z << ", d=2 identity max error " << worst;
    return o;
}

Outcome criterion7() {
    Outcome o;
    const std::int64_t n = 1'000'000;
    // nmin(n)/emin(n) is exactly 1/gamma_ratio(n, 1)
    const double ratio = (1.0 / special::gamma_ratio(n, 1)) / std::sqrt((static_cast<double>(n) + 1.0) / 2.0);
    o.detail.precision(17);
    o.detail << "ratio " << ratio;
    o.require(std::abs(ratio - 1.0) <= 1e-4, "within 1e-4 of 1");
    return o;
}

struct Captured {
    std::string out;
    int status = -1;
};

Captured capture(const std::string& command) {
    Captured c;
    FILE* pipe = popen(command.c_str(), "r");
    if (!pipe) return c;
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) c.out.append(buf.data(), got);
    const int raw = pclose(pipe);
    c.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return c;
}

Outcome criterion8(const char* cli) {
    Outcome o;
    if (!cli) {
        o.require(false, "no CLI path given");
        return o;
    }
    const std::string cmd = std::string("'") + cli + "' verify --seed 42 2>/dev/null";
    const auto a = capture(cmd);
    const auto b = capture(cmd);
    o.detail << "exit " << a.status << "/" << b.status << ", " << a.out.size() << " bytes";
    o.require(a.status == 0 && b.status == 0, "exit code 0");
    o.require(!a.out.empty() && a.out == b.out, "byte-identical reports");
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    const char* cli = argc > 1 ? argv[1] : nullptr;
    struct Criterion {
        int id;
        const char* title;
        double budget_seconds;
        std::function<Outcome()> run;
    };
    const Criterion criteria[] = {
        {1, "exact small-n sphere values", 1.0, criterion1},
        {2, "scaled half-normal minimum tends to sqrt(pi)/2", 10.0, criterion2},
        {3, "closed-form exponential and uniform minima", 5.0, criterion3},
        {4, "asymptotic law and hypothesis violators", 10.0, criterion4},
        {5, "emin against direct sphere sampling", 60.0, criterion5},
        {6, "Gaussian transfer identity", 90.0, criterion6},
        {7, "Stirling limit of the gamma half-ratio", 1.0, criterion7},
        {8, "verify is reproducible", 120.0, [cli] { return criterion8(cli); }},
    };

    int failed = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        o.require(secs <= c.budget_seconds, "runtime budget");
        if (!o.pass) ++failed;
        std::printf("%s %d %s (%.2fs) %s\n", o.pass ? "PASS" : "FAIL", c.id, c.title, secs, o.detail.str().c_str());
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
