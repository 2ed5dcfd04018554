#include "spheremin/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "spheremin/errors.hpp"
#include "spheremin/special.hpp"

namespace spheremin {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string format_param(const char* prefix, double v) {
    std::ostringstream os;
    os.precision(17);
    os << prefix << ':' << v;
    return os.str();
}

class HalfNormal final : public DistributionModel {
public:
    std::string name() const override { return "half-normal"; }
    double cdf(double y) const override { return y <= 0.0 ? 0.0 : special::erf(y); }
    double survival(double y) const override { return y <= 0.0 ? 1.0 : special::erfc(y); }
    double log_survival(double y) const override { return y <= 0.0 ? 0.0 : special::log_erfc(y); }
    double density(double y) const override {
        return y < 0.0 ? 0.0 : special::kTwoOverSqrtPi * std::exp(-y * y);
    }
    DensityAtZero density_at_zero() const override { return DensityAtZero::finite(special::kTwoOverSqrtPi); }
    TailIntegrability tail_lp() const override { return TailIntegrability::attained(1.0); }

    // survival <= 1 so survival^p <= survival for p >= 1, and
    // int_y^inf erfc = exp(-y^2)/sqrt(pi) - y erfc(y) <= exp(-y^2)/sqrt(pi).
    std::optional<double> log_tail_power_bound(double y, double p) const override {
        if (p < 1.0) return std::nullopt;
        const double t = std::max(y, 0.0);
        return -t * t - std::log(special::kSqrtPi);
    }
};

class Exponential final : public DistributionModel {
public:
    explicit Exponential(double rate) : rate_(rate) {}

    std::string name() const override { return format_param("exponential", rate_); }
    double cdf(double y) const override { return y <= 0.0 ? 0.0 : -std::expm1(-rate_ * y); }
    double survival(double y) const override { return y <= 0.0 ? 1.0 : std::exp(-rate_ * y); }
    double log_survival(double y) const override { return y <= 0.0 ? 0.0 : -rate_ * y; }
    double density(double y) const override { return y < 0.0 ? 0.0 : rate_ * std::exp(-rate_ * y); }
    DensityAtZero density_at_zero() const override { return DensityAtZero::finite(rate_); }
    TailIntegrability tail_lp() const override { return TailIntegrability::attained(1.0); }

    std::optional<double> log_tail_power_bound(double y, double p) const override {
        if (!(p > 0.0)) return std::nullopt;
        const double pr = p * rate_;
        return -pr * std::max(y, 0.0) - std::log(pr);
    }

private:
    double rate_;
};

class Uniform01 final : public DistributionModel {
public:
    std::string name() const override { return "uniform01"; }
    double cdf(double y) const override { return std::clamp(y, 0.0, 1.0); }
    double survival(double y) const override { return 1.0 - std::clamp(y, 0.0, 1.0); }
    double log_survival(double y) const override {
        return y >= 1.0 ? -kInf : std::log1p(-std::max(y, 0.0));
    }
    double density(double y) const override { return (y >= 0.0 && y <= 1.0) ? 1.0 : 0.0; }
    DensityAtZero density_at_zero() const override { return DensityAtZero::finite(1.0); }
    double support_upper() const override { return 1.0; }
    TailIntegrability tail_lp() const override { return TailIntegrability::attained(1.0); }

    // int_y^1 (1 - t)^p dt = (1 - y)^(p+1) / (p + 1)
    std::optional<double> log_tail_power_bound(double y, double p) const override {
        if (!(p > 0.0)) return std::nullopt;
        const double t = std::clamp(y, 0.0, 1.0);
        return (p + 1.0) * std::log1p(-t) - std::log(p + 1.0);
    }
};

class PowerLaw final : public DistributionModel {
public:
    explicit PowerLaw(double k) : k_(k) {}

    std::string name() const override { return format_param("power-law", k_); }
    double cdf(double y) const override { return y <= 0.0 ? 0.0 : (y >= 1.0 ? 1.0 : std::pow(y, k_)); }
    double survival(double y) const override { return 1.0 - cdf(y); }
    double log_survival(double y) const override {
        if (y <= 0.0) return 0.0;
        if (y >= 1.0) return -kInf;
        return std::log1p(-std::pow(y, k_));
    }
    double density(double y) const override {
        return (y <= 0.0 || y > 1.0) ? 0.0 : k_ * std::pow(y, k_ - 1.0);
    }
    DensityAtZero density_at_zero() const override { return DensityAtZero::finite(0.0); }
    double support_upper() const override { return 1.0; }
    TailIntegrability tail_lp() const override { return TailIntegrability::attained(1.0); }

    // survival <= 1 on [y, 1]
    std::optional<double> log_tail_power_bound(double y, double p) const override {
        if (!(p > 0.0)) return std::nullopt;
        const double t = std::clamp(y, 0.0, 1.0);
        return t >= 1.0 ? -kInf : p * log_survival(t) + std::log1p(-t);
    }

private:
    double k_;
};

class HeavyTail final : public DistributionModel {
public:
    explicit HeavyTail(double alpha) : alpha_(alpha) {}

    std::string name() const override { return format_param("heavy-tail", alpha_); }
    double cdf(double y) const override { return y <= 0.0 ? 0.0 : -std::expm1(-alpha_ * std::log1p(y)); }
    double survival(double y) const override { return y <= 0.0 ? 1.0 : std::exp(-alpha_ * std::log1p(y)); }
    double log_survival(double y) const override { return y <= 0.0 ? 0.0 : -alpha_ * std::log1p(y); }
    double density(double y) const override {
        return y < 0.0 ? 0.0 : alpha_ * std::exp(-(alpha_ + 1.0) * std::log1p(y));
    }
    DensityAtZero density_at_zero() const override { return DensityAtZero::finite(alpha_); }
    TailIntegrability tail_lp() const override { return TailIntegrability::open(1.0 / alpha_); }

    // int_y^inf (1 + t)^(-alpha p) dt = (1 + y)^(1 - alpha p) / (alpha p - 1)
    std::optional<double> log_tail_power_bound(double y, double p) const override {
        const double ap = alpha_ * p;
        if (!(ap > 1.0)) return std::nullopt;
        return (1.0 - ap) * std::log1p(std::max(y, 0.0)) - std::log(ap - 1.0);
    }

private:
    double alpha_;
};

void require_positive_finite(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) throw InvalidArgument(std::string(what) + " must be positive and finite");
}

}  // namespace

Distribution half_normal() { return Distribution(std::make_shared<HalfNormal>()); }

Distribution exponential(double rate) {
    require_positive_finite(rate, "exponential rate");
    return Distribution(std::make_shared<Exponential>(rate));
}

Distribution uniform01() { return Distribution(std::make_shared<Uniform01>()); }

Distribution power_law(double k) {
    if (!(k > 1.0) || !std::isfinite(k)) throw InvalidArgument("power-law exponent k must be > 1");
    return Distribution(std::make_shared<PowerLaw>(k));
}

Distribution heavy_tail(double alpha) {
    require_positive_finite(alpha, "heavy-tail alpha");
    return Distribution(std::make_shared<HeavyTail>(alpha));
}

}  // namespace spheremin
