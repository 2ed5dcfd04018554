#include "spheremin/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "spheremin/errors.hpp"

namespace spheremin {

namespace {

// 15-point Kronrod extension of 7-point Gauss-Legendre (QUADPACK qk15).
constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the odd Kronrod nodes 1, 3, 5 and the centre.
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTailSearchLimit = 1e300;
// Fraction of the tol/2 tail allowance actually spent. Panels are cheap and
// the truncated mass is the only error not re-estimated by refinement.
constexpr double kTailShare = 1e-4;

struct Panel {
    double lo;
    double hi;
    double value;
    double error;
};

struct LargerError {
    bool operator()(const Panel& a, const Panel& b) const {
        if (a.error != b.error) return a.error < b.error;
        return a.lo > b.lo;
    }
};

class SurvivalPower {
public:
    SurvivalPower(const Distribution& dist, std::int64_t n) : dist_(dist), n_(static_cast<double>(n)) {}

    double operator()(double y) const {
        const double ls = dist_.log_survival(y);
        if (ls == -std::numeric_limits<double>::infinity()) return 0.0;
        return std::exp(n_ * ls);
    }

private:
    const Distribution& dist_;
    double n_;
};

Panel gauss_kronrod(const SurvivalPower& g, double lo, double hi) {
    const double centre = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    const double fc = g(centre);
    double kronrod = fc * kKronrodWeights[7];
    double gauss = fc * kGaussWeights[3];
    double abs_sum = std::abs(kronrod);
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kKronrodNodes[j];
        const double f1 = g(centre - dx);
        const double f2 = g(centre + dx);
        kronrod += kKronrodWeights[j] * (f1 + f2);
        abs_sum += kKronrodWeights[j] * (std::abs(f1) + std::abs(f2));
        if (j % 2 == 1) gauss += kGaussWeights[j / 2] * (f1 + f2);
    }
    const double value = kronrod * half;
    // |K15 - G7| overestimates the K15 error for smooth integrands; the
    // second term is the rounding floor of the 15-term sum.
    const double err = std::max(std::abs((kronrod - gauss) * half), 50.0 * kEps * abs_sum * half);
    return {lo, hi, value, err};
}

double initial_width(const Distribution& dist, std::int64_t n) {
    const auto f0 = dist.density_at_zero();
    const double nd = static_cast<double>(n);
    if (f0.is_positive_finite()) return std::min(1.0, 4.0 / (nd * f0.value + 1.0));
    return 1.0 / std::sqrt(nd);
}

struct Truncation {
    double point;
    double tail_bound;
};

// Smallest y (to bisection resolution) satisfying both tail conditions.
Truncation find_truncation(const Distribution& dist, std::int64_t n, double tol, double start) {
    const double nd = static_cast<double>(n);
    const auto tail = dist.tail_lp();
    double p = 0.0;
    switch (tail.kind) {
        case TailIntegrability::Kind::none_known:
            throw NonConvergent(dist.name() + ": no L^p exponent known for 1 - F; the tail of the "
                                "survival integral cannot be certified");
        case TailIntegrability::Kind::attained:
            if (nd < tail.exponent) {
                throw NonConvergent(dist.name() + ": n is below the L^p exponent of 1 - F; the expected "
                                    "minimum may be infinite");
            }
            p = tail.exponent;
            break;
        case TailIntegrability::Kind::open:
            if (nd <= tail.exponent) {
                throw NonConvergent(dist.name() + ": survival^n is not integrable; the expected minimum "
                                    "is infinite");
            }
            p = nd;
            break;
    }

    const double log_target = std::log(0.5 * tol * kTailShare);
    auto log_tail = [&](double y) -> double {
        const auto bound = dist.log_tail_power_bound(y, p);
        if (!bound) throw NonConvergent(dist.name() + ": no closed-form tail bound for this exponent");
        const double ls = dist.log_survival(y);
        return (nd == p ? 0.0 : (nd - p) * ls) + *bound;
    };
    auto satisfied = [&](double y) {
        return log_tail(y) <= log_target && nd * dist.log_survival(y) <= log_target - std::log1p(y);
    };

    double hi = start;
    while (!satisfied(hi)) {
        hi *= 2.0;
        if (!(hi < kTailSearchLimit)) {
            throw NonConvergent(dist.name() + ": tail bound cannot be driven below the tolerance");
        }
    }
    double lo = hi == start ? 0.0 : 0.5 * hi;
    for (int i = 0; i < 80 && hi - lo > 1e-12 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (satisfied(mid)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return {hi, std::exp(log_tail(hi))};
}

}  // namespace

QuadratureResult survival_power_integral(const Distribution& dist, std::int64_t n, double tol,
                                         const QuadratureOptions& options) {
    if (n < 1) throw InvalidArgument("survival_power_integral: n must be >= 1");
    if (!(tol > 0.0) || !(tol <= 1e-2)) {
        throw InvalidTolerance("survival_power_integral: tol must lie in (0, 1e-2]");
    }

    const double width0 = initial_width(dist, n);
    Truncation trunc{dist.support_upper(), 0.0};
    if (!dist.bounded()) trunc = find_truncation(dist, n, tol, width0);

    const SurvivalPower g(dist, n);
    std::priority_queue<Panel, std::vector<Panel>, LargerError> queue;
    double total_error = 0.0;
    for (double lo = 0.0, w = std::min(width0, trunc.point); lo < trunc.point; w *= 2.0) {
        const double hi = std::min(lo + w, trunc.point);
        const Panel p = gauss_kronrod(g, lo, hi);
        total_error += p.error;
        queue.push(p);
        lo = hi;
    }

    const double panel_budget = 0.5 * tol;
    while (total_error > panel_budget && static_cast<int>(queue.size()) < options.max_panels) {
        const Panel worst = queue.top();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (!(mid > worst.lo && mid < worst.hi)) break;
        queue.pop();
        const Panel left = gauss_kronrod(g, worst.lo, mid);
        const Panel right = gauss_kronrod(g, mid, worst.hi);
        total_error += (left.error + right.error) - worst.error;
        queue.push(left);
        queue.push(right);
    }

    std::vector<Panel> panels;
    panels.reserve(queue.size());
    while (!queue.empty()) {
        panels.push_back(queue.top());
        queue.pop();
    }
    std::sort(panels.begin(), panels.end(), [](const Panel& a, const Panel& b) { return a.lo < b.lo; });

    // Neumaier-compensated sums in position order.
    double sum = 0.0, comp = 0.0, err = 0.0;
    for (const Panel& p : panels) {
        const double t = sum + p.value;
        comp += std::abs(sum) >= std::abs(p.value) ? (sum - t) + p.value : (p.value - t) + sum;
        sum = t;
        err += p.error;
    }

    QuadratureResult result;
    result.value = std::max(0.0, sum + comp);
    result.abs_error_bound = err + trunc.tail_bound;
    result.truncation_point = trunc.point;
    result.panels = static_cast<int>(panels.size());
    result.converged = err <= panel_budget && trunc.tail_bound <= 0.5 * tol;
    return result;
}

}  // namespace spheremin
