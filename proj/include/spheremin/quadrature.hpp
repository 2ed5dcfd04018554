#pragma once

#include <cstdint>

#include "spheremin/distributions.hpp"

namespace spheremin {

struct QuadratureResult {
    double value = 0.0;
    double abs_error_bound = 0.0;  // panel error estimate + certified tail bound
    double truncation_point = 0.0;
    int panels = 0;
    bool converged = false;
};

struct QuadratureOptions {
    int max_panels = 200000;
};

/// E[min(X_1..X_n)] = integral over [0, inf) of (1 - F(y))^n dy.
///
/// The integrand is evaluated as exp(n * log_survival(y)) only. Integration
/// stops at a truncation point y* past which the tail is bounded by
/// t = 1e-4 * tol/2: y* = support_upper for bounded support, otherwise the
/// smallest y with
///
///   (n - p) log S(y) + ln B_p(y) <= ln t   and
///   n log S(y)                   <= ln t - ln(1 + y),
///
/// where S = 1 - F is nonincreasing, p is an exponent with S in L^p, and
/// B_p(y) bounds the integral of S^p over [y, inf), so S^n <= S(y)^(n-p) S^p
/// on the tail. [0, y*] is split into panels graded geometrically from 0
/// (first width min(1, 4/(n f(0) + 1)), or 1/sqrt(n) when f(0) is not
/// positive and finite) and refined adaptively with 15-point Gauss-Kronrod
/// until the panel error estimate is below tol/2.
///
/// tol is absolute and must lie in (0, 1e-2]; otherwise InvalidTolerance.
/// Throws NonConvergent when no admissible p <= n exists or the tail bound
/// cannot be driven below tol/2, which is the divergent-expectation case.
/// If panel refinement exhausts max_panels the result comes back with
/// converged = false. Deterministic: panels are summed in order of position.
QuadratureResult survival_power_integral(const Distribution& dist, std::int64_t n, double tol,
                                         const QuadratureOptions& options = {});

}  // namespace spheremin
