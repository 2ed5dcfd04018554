#pragma once

#include <limits>
#include <memory>
#include <optional>
#include <string>

namespace spheremin {

/// f(0+) of a distribution. Stored in closed form, never differentiated
/// numerically.
struct DensityAtZero {
    enum class Kind { finite, infinite, undefined };

    Kind kind = Kind::undefined;
    double value = std::numeric_limits<double>::quiet_NaN();

    static DensityAtZero finite(double v) { return {Kind::finite, v}; }
    static DensityAtZero infinite() { return {Kind::infinite, std::numeric_limits<double>::infinity()}; }
    static DensityAtZero undefined() { return {}; }

    [[nodiscard]] bool is_positive_finite() const { return kind == Kind::finite && value > 0.0; }
};

/// Which exponents p make 1 - F an element of L^p([0, inf)).
///   attained:  every p >= exponent
///   open:      every p >  exponent
///   none_known no exponent is known
struct TailIntegrability {
    enum class Kind { attained, open, none_known };

    Kind kind = Kind::none_known;
    double exponent = std::numeric_limits<double>::quiet_NaN();

    static TailIntegrability attained(double p) { return {Kind::attained, p}; }
    static TailIntegrability open(double p) { return {Kind::open, p}; }
    static TailIntegrability none_known() { return {}; }

    [[nodiscard]] bool admits(double p) const {
        switch (kind) {
            case Kind::attained: return p >= exponent;
            case Kind::open: return p > exponent;
            case Kind::none_known: return false;
        }
        return false;
    }
};

/// A nonnegative random variable supported on [0, support_upper].
/// Implementations must be immutable; the same instance is read from many
/// threads at once.
class DistributionModel {
public:
    virtual ~DistributionModel() = default;

    [[nodiscard]] virtual std::string name() const = 0;
    [[nodiscard]] virtual double cdf(double y) const = 0;
    [[nodiscard]] virtual double survival(double y) const = 0;
    [[nodiscard]] virtual double log_survival(double y) const = 0;
    [[nodiscard]] virtual double density(double y) const = 0;
    [[nodiscard]] virtual DensityAtZero density_at_zero() const = 0;
    [[nodiscard]] virtual double support_upper() const { return std::numeric_limits<double>::infinity(); }
    [[nodiscard]] virtual TailIntegrability tail_lp() const = 0;

    /// ln of a certified upper bound on the integral of survival(t)^p over
    /// [y, inf). nullopt when no closed-form bound is available for this p
    /// (including when the integral diverges).
    [[nodiscard]] virtual std::optional<double> log_tail_power_bound(double y, double p) const = 0;
};

/// Shared, immutable handle to a DistributionModel. Cheap to copy.
class Distribution {
public:
    explicit Distribution(std::shared_ptr<const DistributionModel> model) : model_(std::move(model)) {}

    [[nodiscard]] std::string name() const { return model_->name(); }
    [[nodiscard]] double cdf(double y) const { return model_->cdf(y); }
    [[nodiscard]] double survival(double y) const { return model_->survival(y); }
    [[nodiscard]] double log_survival(double y) const { return model_->log_survival(y); }
    [[nodiscard]] double density(double y) const { return model_->density(y); }
    [[nodiscard]] DensityAtZero density_at_zero() const { return model_->density_at_zero(); }
    [[nodiscard]] double support_upper() const { return model_->support_upper(); }
    [[nodiscard]] bool bounded() const { return support_upper() < std::numeric_limits<double>::infinity(); }
    [[nodiscard]] TailIntegrability tail_lp() const { return model_->tail_lp(); }
    [[nodiscard]] std::optional<double> log_tail_power_bound(double y, double p) const {
        return model_->log_tail_power_bound(y, p);
    }

    [[nodiscard]] const DistributionModel& model() const { return *model_; }

private:
    std::shared_ptr<const DistributionModel> model_;
};

/// |Z| for Z ~ Normal(0, 1/2): cdf erf(y), survival erfc(y), f(0) = 2/sqrt(pi).
Distribution half_normal();

/// Exponential with the given rate; throws InvalidArgument unless rate > 0.
Distribution exponential(double rate);

/// Uniform on [0, 1]; E[min of n] = 1/(n+1) exactly.
Distribution uniform01();

/// F(y) = y^k on [0, 1], k > 1. Density vanishes at 0, so it violates the
/// nonvanishing-density hypothesis.
Distribution power_law(double k);

/// survival(y) = (1 + y)^-alpha, alpha > 0. 1 - F is in L^p exactly for
/// p > 1/alpha; the minimum of n copies has finite mean iff n * alpha > 1.
Distribution heavy_tail(double alpha);

}  // namespace spheremin
