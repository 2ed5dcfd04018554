#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace spheremin {

struct VerifyCheck {
    std::string name;
    double measured = 0.0;
    double reference = 0.0;
    double tolerance = 0.0;  // absolute, or z threshold for Monte Carlo checks
    bool passed = false;
};

struct VerifyReport {
    std::vector<VerifyCheck> checks;

    [[nodiscard]] bool all_passed() const;
};

struct VerifyOptions {
    std::int64_t samples = 1'000'000;
    std::uint64_t seed = 42;
};

/// Cross-validates every route against the others: quadrature against
/// closed forms, the sphere-mean integral formula against direct sphere
/// sampling, the Gaussian transfer identity on every built-in function,
/// and the asymptotic laws. Single-worker sampling, so a fixed seed gives
/// an identical report.
VerifyReport run_verification(const VerifyOptions& options);

}  // namespace spheremin
