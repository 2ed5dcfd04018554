#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "spheremin/distributions.hpp"
#include "spheremin/errors.hpp"

namespace spheremin {

inline constexpr double kDefaultTol = 1e-10;

enum class Method { quadrature, asymptotic };

std::string_view to_string(Method m);

struct MinResult {
    std::int64_t n = 0;
    double value = 0.0;
    Method method = Method::quadrature;
    // nullopt for asymptotic results: the asymptotic law carries no error term.
    std::optional<double> error_bound;
    // Hypotheses that could not be verified but did not block the result.
    std::vector<Hypothesis> warnings;
};

/// Expected min |X_i| over n iid Normal(0, 1/2) variables.
MinResult nmin(std::int64_t n, double tol = kDefaultTol);

/// Expected smallest |coordinate| of a uniform point on the unit sphere in
/// R^n: Gamma(n/2)/Gamma((n+1)/2) * nmin(n).
MinResult emin(std::int64_t n, double tol = kDefaultTol);

/// E[min(X_1..X_n)] for iid X_i ~ dist, by survival-power quadrature.
/// Throws NonConvergent if the integral diverges or does not reach tol.
MinResult expected_min(const Distribution& dist, std::int64_t n, double tol = kDefaultTol);

/// Large-n law 1/(f(0) (n + 1)).
///
/// Throws HypothesisViolated(density) when f(0) is zero, infinite or
/// undefined. When no L^p exponent is known for 1 - F the value is still
/// returned, with Hypothesis::tail in warnings.
MinResult asymptotic_min(const Distribution& dist, std::int64_t n);

/// Gamma(n/2)/Gamma((n+1)/2) * sqrt(pi)/(2(n+1)); behaves like
/// sqrt(pi/2) n^(-3/2) for large n.
MinResult emin_asymptotic(std::int64_t n);

}  // namespace spheremin
