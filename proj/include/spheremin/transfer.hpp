#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spheremin/simd/kernels.hpp"

namespace spheremin {

/// A function on R^n with f(lambda x) = lambda^degree f(x) for lambda > 0.
///
/// Built-ins carry a `batched` reduction so whole sample blocks go through
/// the SIMD kernels; user-defined functions only need `eval`.
struct HomogeneousFunction {
    enum class Batched { none, min_abs, max_abs, sum_abs, sum_squares, abs_first };

    std::string name;
    int degree = 0;
    std::function<double(std::span<const double>)> eval;
    Batched batched = Batched::none;

    double operator()(std::span<const double> x) const { return eval(x); }
};

/// min-abs, max-abs, sum-abs, sum-squares, abs-first.
std::vector<HomogeneousFunction> builtin_functions();

/// Looks up a built-in by its CLI name.
std::optional<HomogeneousFunction> find_builtin(const std::string& name);

struct Estimate {
    double point = 0.0;
    double std_error = 0.0;  // sample standard deviation / sqrt(samples)
    std::int64_t samples = 0;
};

inline constexpr double kHalfVarianceSigma = 0.70710678118654752440;  // sqrt(1/2)

struct SamplingOptions {
    // Each worker draws from its own (seed, worker) substream; the merged
    // estimate depends on (seed, workers) but not on scheduling.
    int workers = 1;
    std::size_t block_rows = 1024;
    // Coordinate scale for sphere_mean_direct only. Normalization removes
    // it; the Gaussian route always uses variance 1/2.
    double direct_sigma = kHalfVarianceSigma;
    // nullptr selects the best kernels for this CPU.
    const simd::KernelTable* kernels = nullptr;
};

/// Spherical mean of f over S^{n-1} through the Gaussian transfer identity:
///   mean_{S^{n-1}} f = Gamma(n/2)/Gamma((n+d)/2) * E[f(X_1..X_n)],
/// X_i iid Normal(0, 1/2) (density exp(-x^2)/sqrt(pi)). The std_error is
/// scaled by the same factor. Throws InvalidArgument for n < 1 or samples < 2.
Estimate sphere_mean_from_gaussian(const HomogeneousFunction& f, std::int64_t n, std::int64_t samples,
                                   std::uint64_t seed, const SamplingOptions& options = {});

/// Spherical mean of f by averaging over uniform points on S^{n-1}, drawn
/// as normalized Gaussian vectors. A vector of norm 0 is redrawn.
Estimate sphere_mean_direct(const HomogeneousFunction& f, std::int64_t n, std::int64_t samples,
                            std::uint64_t seed, const SamplingOptions& options = {});

struct TransferReport {
    Estimate gaussian;
    Estimate direct;
    double z = 0.0;  // |difference| / combined standard error
    bool agree = false;
};

inline constexpr double kAgreementZ = 4.0;

/// Runs both routes on independent streams and compares them. When both
/// standard errors vanish the routes must agree to 1e-12 relative.
TransferReport transfer_identity_check(const HomogeneousFunction& f, std::int64_t n, std::int64_t samples,
                                       std::uint64_t seed, const SamplingOptions& options = {});

}  // namespace spheremin
