#include "spheremin/minima.hpp"

#include <cmath>
#include <sstream>

#include "spheremin/quadrature.hpp"
#include "spheremin/special.hpp"

namespace spheremin {

namespace {

void require_n(std::int64_t n) {
    if (n < 1) throw InvalidArgument("n must be >= 1");
}

MinResult from_quadrature(std::int64_t n, const QuadratureResult& q, const std::string& label) {
    if (!q.converged) {
        std::ostringstream os;
        os << label << ": quadrature did not reach tolerance (error bound " << q.abs_error_bound << " after "
           << q.panels << " panels)";
        throw NonConvergent(os.str());
    }
    return {n, q.value, Method::quadrature, q.abs_error_bound, {}};
}

}  // namespace

std::string_view to_string(Method m) {
    switch (m) {
        case Method::quadrature: return "quadrature";
        case Method::asymptotic: return "asymptotic";
    }
    return "?";
}

MinResult nmin(std::int64_t n, double tol) {
    require_n(n);
    return from_quadrature(n, survival_power_integral(half_normal(), n, tol), "nmin");
}

MinResult emin(std::int64_t n, double tol) {
    MinResult r = nmin(n, tol);
    const double factor = special::gamma_ratio(n, 1);
    r.value *= factor;
    r.error_bound = *r.error_bound * factor;
    return r;
}

MinResult expected_min(const Distribution& dist, std::int64_t n, double tol) {
    require_n(n);
    return from_quadrature(n, survival_power_integral(dist, n, tol), dist.name());
}

MinResult asymptotic_min(const Distribution& dist, std::int64_t n) {
    require_n(n);
    const DensityAtZero f0 = dist.density_at_zero();
    if (!f0.is_positive_finite()) {
        std::string why;
        switch (f0.kind) {
            case DensityAtZero::Kind::finite: why = "density vanishes at 0"; break;
            case DensityAtZero::Kind::infinite: why = "density is unbounded at 0"; break;
            case DensityAtZero::Kind::undefined: why = "density at 0 is undefined"; break;
        }
        throw HypothesisViolated(Hypothesis::density,
                                 dist.name() + ": condition (1) fails, needs a continuous nonvanishing density "
                                               "near 0 (" + why + ")");
    }
    MinResult r{n, 1.0 / (f0.value * (static_cast<double>(n) + 1.0)), Method::asymptotic, std::nullopt, {}};
    if (dist.tail_lp().kind == TailIntegrability::Kind::none_known) r.warnings.push_back(Hypothesis::tail);
    return r;
}

MinResult emin_asymptotic(std::int64_t n) {
    require_n(n);
    const double nmin_law = special::kSqrtPi / (2.0 * (static_cast<double>(n) + 1.0));
    return {n, special::gamma_ratio(n, 1) * nmin_law, Method::asymptotic, std::nullopt, {}};
}

}  // namespace spheremin
