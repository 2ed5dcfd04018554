#include "spheremin/verify.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "spheremin/minima.hpp"
#include "spheremin/special.hpp"
#include "spheremin/transfer.hpp"

namespace spheremin {

namespace {

constexpr double kSqrtPiOver2 = 0.88622692545275801365;

class Collector {
public:
    void within(std::string name, double measured, double reference, double tol) {
        checks_.push_back({std::move(name), measured, reference, tol, std::abs(measured - reference) <= tol});
    }

    void flag(std::string name, bool ok) { checks_.push_back({std::move(name), ok ? 1.0 : 0.0, 1.0, 0.0, ok}); }

    void z_score(std::string name, double z) {
        checks_.push_back({std::move(name), z, 0.0, kAgreementZ, z <= kAgreementZ});
    }

    std::vector<VerifyCheck> take() { return std::move(checks_); }

private:
    std::vector<VerifyCheck> checks_;
};

double nmin_value(std::int64_t n, double tol = kDefaultTol) { return nmin(n, tol).value; }

template <typename Ex, typename F>
bool throws(F&& f) {
    try {
        f();
    } catch (const Ex&) {
        return true;
    } catch (...) {
        return false;
    }
    return false;
}

}  // namespace

bool VerifyReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const VerifyCheck& c) { return c.passed; });
}

VerifyReport run_verification(const VerifyOptions& options) {
    Collector c;
    const double sqrt_pi = special::kSqrtPi;

    c.within("nmin(1) = 1/sqrt(pi)", nmin_value(1), 1.0 / sqrt_pi, 1e-12);
    c.within("nmin(2) = (2-sqrt2)/sqrt(pi)", nmin_value(2), (2.0 - std::sqrt(2.0)) / sqrt_pi, 1e-12);
    c.within("emin(1) = 1", emin(1).value, 1.0, 1e-12);
    c.within("emin(2) = (4-2sqrt2)/pi", emin(2).value, (4.0 - 2.0 * std::sqrt(2.0)) / special::kPi, 1e-10);

    for (const double rate : {1.0, 3.0}) {
        for (const std::int64_t n : {1, 2, 10, 100, 10000}) {
            c.within("exponential:" + std::to_string(static_cast<int>(rate)) + " n=" + std::to_string(n),
                     expected_min(exponential(rate), n).value, 1.0 / (static_cast<double>(n) * rate), 1e-9);
        }
    }
    for (const std::int64_t n : {1, 2, 10, 100, 10000}) {
        c.within("uniform01 n=" + std::to_string(n), expected_min(uniform01(), n).value,
                 1.0 / (static_cast<double>(n) + 1.0), 1e-9);
    }

    double worst_relation = 0.0;
    for (std::int64_t n = 1; n <= 50; ++n) {
        const double lhs = std::exp(special::ln_gamma(0.5 * static_cast<double>(n + 1))) * emin(n).value;
        const double rhs = std::exp(special::ln_gamma(0.5 * static_cast<double>(n))) * nmin_value(n);
        worst_relation = std::max(worst_relation, std::abs(lhs - rhs) / std::abs(rhs));
    }
    c.within("Gamma((n+1)/2) emin = Gamma(n/2) nmin, n<=50 (max rel)", worst_relation, 0.0, 1e-10);

    // Tolerance shrinks like (n+1)^-2 so the scaled residual is resolved.
    double previous = INFINITY;
    bool decreasing = true;
    for (const std::int64_t n : {100, 1000, 10000, 100000}) {
        const double np1 = static_cast<double>(n) + 1.0;
        const double scaled = np1 * nmin_value(n, 1e-4 / (np1 * np1));
        const double residual = std::abs(scaled - kSqrtPiOver2);
        decreasing = decreasing && residual < previous;
        previous = residual;
        if (n == 10000) c.within("(n+1) nmin(n) at n=1e4", scaled, kSqrtPiOver2, 1e-3);
    }
    c.flag("|(n+1) nmin(n) - sqrt(pi)/2| decreasing over 1e2..1e5", decreasing);

    for (const std::int64_t n : {1000, 100000}) {
        const double tol = n == 1000 ? 1e-2 : 1e-3;
        for (const auto& d : {half_normal(), exponential(3.0)}) {
            const double ratio = asymptotic_min(d, n).value / expected_min(d, n).value;
            c.within("asymptotic/quadrature " + d.name() + " n=" + std::to_string(n), ratio, 1.0, tol);
        }
    }
    c.flag("power-law:2 violates density hypothesis",
           throws<HypothesisViolated>([] { (void)asymptotic_min(power_law(2.0), 10); }));
    c.flag("heavy-tail:0.5 n=1 diverges", throws<NonConvergent>([] { (void)expected_min(heavy_tail(0.5), 1); }));

    const auto min_abs = *find_builtin("min-abs");
    for (const std::int64_t n : {2, 5, 10, 50}) {
        const Estimate e = sphere_mean_direct(min_abs, n, options.samples, options.seed);
        c.z_score("emin vs sphere sampling n=" + std::to_string(n), std::abs(emin(n).value - e.point) / e.std_error);
    }

    for (const auto& f : builtin_functions()) {
        for (const std::int64_t n : {2, 3, 10}) {
            const TransferReport r = transfer_identity_check(f, n, options.samples, options.seed);
            c.z_score("transfer identity " + f.name + " n=" + std::to_string(n), r.z);
        }
    }

    double worst_d2 = 0.0;
    for (std::int64_t n = 1; n <= 1000; ++n) {
        worst_d2 = std::max(worst_d2, std::abs(special::gamma_ratio(n, 2) * 0.5 * static_cast<double>(n) - 1.0));
    }
    c.within("Gamma(n/2)/Gamma(n/2+1) * n/2 = 1, n<=1000 (max abs)", worst_d2, 0.0, 1e-12);

    const std::int64_t big = 1000000;
    const double stirling = (1.0 / special::gamma_ratio(big, 1)) / std::sqrt((static_cast<double>(big) + 1.0) / 2.0);
    c.within("nmin/emin / sqrt((n+1)/2) at n=1e6", stirling, 1.0, 1e-4);

    return {c.take()};
}

}  // namespace spheremin
