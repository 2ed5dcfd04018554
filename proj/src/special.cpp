#include "spheremin/special.hpp"

#include <array>
#include <cmath>
#include <limits>

#include "spheremin/errors.hpp"

namespace spheremin::special {

namespace {

// W. J. Cody, "Rational Chebyshev approximations for the error function",
// Math. Comp. 23 (1969). Coefficients as in the netlib CALERF routine.
constexpr std::array<double, 5> kErfA = {3.16112374387056560e00, 1.13864154151050156e02,
                                         3.77485237685302021e02, 3.20937758913846947e03,
                                         1.85777706184603153e-1};
constexpr std::array<double, 4> kErfB = {2.36012909523441209e01, 2.44024637934444173e02,
                                         1.28261652607737228e03, 2.84423683343917062e03};
constexpr std::array<double, 9> kErfcC = {
    5.64188496988670089e-1, 8.88314979438837594e00, 6.61191906371416295e01,
    2.98635138197400131e02, 8.81952221241769090e02, 1.71204761263407058e03,
    2.05107837782607147e03, 1.23033935479799725e03, 2.15311535474403846e-8};
constexpr std::array<double, 8> kErfcD = {
    1.57449261107098347e01, 1.17693950891312499e02, 5.37181101862009858e02,
    1.62138957456669019e03, 3.29079923573345963e03, 4.36261909014324716e03,
    3.43936767414372164e03, 1.23033935480374942e03};
constexpr std::array<double, 6> kErfcP = {3.05326634961232344e-1, 3.60344899949804439e-1,
                                          1.25781726111229246e-1, 1.60837851487422766e-2,
                                          6.58749161529837803e-4, 1.63153871373020978e-2};
constexpr std::array<double, 5> kErfcQ = {2.56852019228982242e00, 1.87295284992346047e00,
                                          5.27905102951428412e-1, 6.05183413124413191e-2,
                                          2.33520497626869185e-3};

constexpr double kSmallThreshold = 0.46875;
constexpr double kMidThreshold = 4.0;
constexpr double kErfcUnderflow = 26.543;
constexpr double kErfcxHuge = 6.71e7;

// erf(y) for |y| <= 0.46875.
double erf_small(double y) {
    const double ysq = std::abs(y) > 1.11e-16 ? y * y : 0.0;
    double num = kErfA[4] * ysq;
    double den = ysq;
    for (int i = 0; i < 3; ++i) {
        num = (num + kErfA[i]) * ysq;
        den = (den + kErfB[i]) * ysq;
    }
    return y * (num + kErfA[3]) / (den + kErfB[3]);
}

// exp(y^2) * erfc(y) for y > 0.46875.
double erfcx_large(double y) {
    if (y <= kMidThreshold) {
        double num = kErfcC[8] * y;
        double den = y;
        for (int i = 0; i < 7; ++i) {
            num = (num + kErfcC[i]) * y;
            den = (den + kErfcD[i]) * y;
        }
        return (num + kErfcC[7]) / (den + kErfcD[7]);
    }
    if (y >= kErfcxHuge) return kInvSqrtPi / y;
    const double inv_sq = 1.0 / (y * y);
    double num = kErfcP[5] * inv_sq;
    double den = inv_sq;
    for (int i = 0; i < 4; ++i) {
        num = (num + kErfcP[i]) * inv_sq;
        den = (den + kErfcQ[i]) * inv_sq;
    }
    const double r = inv_sq * (num + kErfcP[4]) / (den + kErfcQ[4]);
    return (kInvSqrtPi - r) / y;
}

// exp(-y^2) split as exp(-s^2) * exp(-(y-s)(y+s)) with s = trunc(16 y)/16,
// so s*s is exact.
double exp_neg_square(double y) {
    const double s = std::trunc(y * 16.0) / 16.0;
    const double del = (y - s) * (y + s);
    return std::exp(-s * s) * std::exp(-del);
}

// Stirling series for ln Gamma(x) - [(x - 1/2) ln x - x + ln(2 pi)/2], x >= 10.
double stirling_tail(double x) {
    constexpr std::array<double, 8> kCoef = {
        1.0 / 12.0,        -1.0 / 360.0,     1.0 / 1260.0,  -1.0 / 1680.0,
        1.0 / 1188.0,      -691.0 / 360360.0, 1.0 / 156.0,  -3617.0 / 122400.0};
    const double inv = 1.0 / x;
    const double inv_sq = inv * inv;
    double acc = 0.0;
    for (auto it = kCoef.rbegin(); it != kCoef.rend(); ++it) acc = acc * inv_sq + *it;
    return acc * inv;
}

constexpr double kHalfLnTwoPi = 0.91893853320467274178;
constexpr double kEulerGamma = 0.57721566490153286061;
constexpr double kStirlingCutoff = 10.0;

// zeta(k) - 1 for k = 2..32.
constexpr std::array<double, 31> kZetaMinusOne = {
    0.64493406684822643647,     0.20205690315959428540,     0.082323233711138191516,
    0.036927755143369926331,    0.017343061984449139715,    0.0083492773819228268398,
    0.0040773561979443393787,   0.0020083928260822144179,   0.00099457512781808533715,
    0.00049418860411946455870,  0.00024608655330804829864,  0.00012271334757848914675,
    0.000061248135058704829259, 0.000030588236307020493552, 0.000015282259408651871733,
    7.6371976378997622736e-6,   3.8172932649998398565e-6,   1.9082127165539389257e-6,
    9.5396203387279611315e-7,   4.7693298678780646312e-7,   2.3845050272773299000e-7,
    1.1921992596531107307e-7,   5.9608189051259479612e-8,   2.9803503514652280186e-8,
    1.4901554828365041235e-8,   7.4507117898354294920e-9,   3.7253340247884570548e-9,
    1.8626597235130490064e-9,   9.3132743241966818287e-10,  4.6566290650337840730e-10,
    2.3283118336765054920e-10};

// ln Gamma(2 + z) for |z| <= 1/2:
//   z (1 - gamma) + sum_{k>=2} (-1)^k (zeta(k) - 1) z^k / k.
// The zeta(k) - 1 ~ 2^-k decay makes 31 terms enough for |z| <= 1/2.
double ln_gamma_two_plus(double z) {
    double acc = 0.0;
    for (int k = static_cast<int>(kZetaMinusOne.size()) + 1; k >= 2; --k) {
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        acc = acc * z + sign * kZetaMinusOne[k - 2] / k;
    }
    return z * ((1.0 - kEulerGamma) + z * acc);
}

}  // namespace

double erf(double y) {
    const double a = std::abs(y);
    if (a <= kSmallThreshold) return erf_small(y);
    const double r = (0.5 - erfc(a)) + 0.5;
    return y < 0.0 ? -r : r;
}

double erfc(double y) {
    if (std::isnan(y)) return y;
    const double a = std::abs(y);
    double r;
    if (a <= kSmallThreshold) {
        return 1.0 - erf_small(y);
    } else if (a >= kErfcUnderflow) {
        r = 0.0;
    } else {
        r = exp_neg_square(a) * erfcx_large(a);
    }
    return y < 0.0 ? 2.0 - r : r;
}

double erfcx(double y) {
    if (std::isnan(y)) return y;
    if (y < 0.0) {
        // 2 exp(y^2) - erfcx(-y); overflows for y below about -26.6
        const double e = 1.0 / exp_neg_square(-y);
        return (e + e) - erfcx(-y);
    }
    if (y <= kSmallThreshold) return std::exp(y * y) * (1.0 - erf_small(y));
    return erfcx_large(y);
}

double log_erfc(double y) {
    if (std::isnan(y)) return y;
    if (y < 0.0) return std::log(erfc(y));
    if (y <= kSmallThreshold) return std::log1p(-erf_small(y));
    if (std::isinf(y)) return -std::numeric_limits<double>::infinity();
    const double hi = y * y;
    const double lo = std::fma(y, y, -hi);
    return -hi + (std::log(erfcx_large(y)) - lo);
}

double ln_gamma(double x) {
    if (!(x > 0.0)) throw InvalidArgument("ln_gamma: argument must be positive");
    if (std::isinf(x)) return x;
    if (x == 1.0 || x == 2.0) return 0.0;
    if (x < 0.5) return ln_gamma(x + 1.0) - std::log(x);
    if (x < 1.5) {
        // ln Gamma(x) = ln Gamma(x + 1) - ln x with x + 1 in [1.5, 2.5)
        const double z = x - 1.0;
        return ln_gamma_two_plus(z) - std::log1p(z);
    }
    if (x < 2.5) return ln_gamma_two_plus(x - 2.0);
    if (x < kStirlingCutoff) {
        double prod = 1.0;
        double t = x;
        while (t >= 2.5) {
            t -= 1.0;
            prod *= t;
        }
        return std::log(prod) + ln_gamma_two_plus(t - 2.0);
    }
    return (x - 0.5) * std::log(x) - x + kHalfLnTwoPi + stirling_tail(x);
}

double ln_gamma_difference(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) {
        throw InvalidArgument("ln_gamma_difference: arguments must be positive");
    }
    if (a == b) return 0.0;
    if (a < kStirlingCutoff || b < kStirlingCutoff) return ln_gamma(a) - ln_gamma(b);
    // (a - 1/2) ln a - (b - 1/2) ln b - (a - b), regrouped around h = a - b
    const double h = a - b;
    return (a - 0.5) * std::log1p(h / b) + h * std::log(b) - h + (stirling_tail(a) - stirling_tail(b));
}

double gamma_ratio(std::int64_t n, std::int64_t d) {
    if (n < 1) throw InvalidArgument("gamma_ratio: n must be >= 1");
    if (d < 0) throw InvalidArgument("gamma_ratio: d must be >= 0");
    if (d == 0) return 1.0;
    const double a = 0.5 * static_cast<double>(n);
    const double b = 0.5 * static_cast<double>(n + d);
    return std::exp(ln_gamma_difference(a, b));
}

}  // namespace spheremin::special
