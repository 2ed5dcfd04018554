#pragma once

#include <cstdint>

namespace spheremin::special {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kSqrtPi = 1.77245385090551602730;
inline constexpr double kInvSqrtPi = 0.56418958354775628695;  // 1/sqrt(pi)
inline constexpr double kTwoOverSqrtPi = 1.12837916709551257390;

/// Error function. Relative accuracy ~1e-16 over the whole real line.
double erf(double y);

/// Complementary error function. Relative error <= 1e-14 on [0, 26];
/// underflows to 0 beyond y ~ 26.55. erfc(0) is exactly 1.
///
/// Rational Chebyshev approximations on three intervals, switching at
/// |y| = 0.46875 (erf series form) and |y| = 4 (asymptotic form in 1/y^2).
/// exp(-y^2) is evaluated in two pieces so the rounding of y*y does not
/// leak into the result.
double erfc(double y);

/// Scaled complementary error function exp(y^2) * erfc(y). Finite for all
/// y >= 0, decays like 1/(y sqrt(pi)).
double erfcx(double y);

/// ln(erfc(y)) without underflow. Three regimes:
///   y <= 0.46875       log1p(-erf(y))
///   y  > 0.46875       -y^2 + log(erfcx(y))
/// with -y^2 carried as an exact two-term product. Negative y falls back to
/// log(erfc(y)).
double log_erfc(double y);

/// ln Gamma(x) for x > 0; relative error <= 1e-13 on [0.5, 1e7].
/// Throws InvalidArgument for x <= 0 or NaN.
double ln_gamma(double x);

/// ln Gamma(a) - ln Gamma(b) without the cancellation of subtracting two large
/// log-gammas. Both arguments must be positive.
double ln_gamma_difference(double a, double b);

/// Gamma(n/2) / Gamma((n+d)/2), the factor converting Gaussian expectations
/// of a d-homogeneous function into spherical means. d = 0 returns exactly 1.
/// Throws InvalidArgument unless n >= 1, d >= 0.
double gamma_ratio(std::int64_t n, std::int64_t d);

/// Gamma(n/2) / Gamma((n+1)/2), positive and strictly decreasing in n.
struct GammaHalfRatio {
    std::int64_t n;
    double value;

    static GammaHalfRatio of(std::int64_t n) { return {n, gamma_ratio(n, 1)}; }
};

}  // namespace spheremin::special
