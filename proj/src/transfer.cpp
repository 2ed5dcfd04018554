#include "spheremin/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "spheremin/errors.hpp"
#include "spheremin/random.hpp"
#include "spheremin/special.hpp"

namespace spheremin {

namespace {

// Stream domains so the two routes never draw the same variates.
constexpr std::uint32_t kGaussianRoute = 1;
constexpr std::uint32_t kDirectRoute = 2;
constexpr int kMaxRedraws = 64;

// Welford running moments with Chan's pairwise merge.
struct Moments {
    std::int64_t count = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x) {
        ++count;
        const double delta = x - mean;
        mean += delta / static_cast<double>(count);
        m2 += delta * (x - mean);
    }

    void merge(const Moments& other) {
        if (other.count == 0) return;
        if (count == 0) {
            *this = other;
            return;
        }
        const double na = static_cast<double>(count);
        const double nb = static_cast<double>(other.count);
        const double total = na + nb;
        const double delta = other.mean - mean;
        mean += delta * nb / total;
        m2 += other.m2 + delta * delta * na * nb / total;
        count += other.count;
    }

    [[nodiscard]] double std_error() const {
        if (count < 2) return 0.0;
        const double var = std::max(0.0, m2 / static_cast<double>(count - 1));
        return std::sqrt(var / static_cast<double>(count));
    }
};

void evaluate_block(const HomogeneousFunction& f, const simd::KernelTable& k, std::span<const double> block,
                    std::size_t dim, std::span<double> out, std::vector<double>& row) {
    using B = HomogeneousFunction::Batched;
    switch (f.batched) {
        case B::min_abs: k.min_abs(block, dim, out); return;
        case B::max_abs: k.max_abs(block, dim, out); return;
        case B::sum_abs: k.sum_abs(block, dim, out); return;
        case B::sum_squares: k.sum_squares(block, dim, out); return;
        case B::abs_first:
            for (std::size_t r = 0; r < out.size(); ++r) out[r] = std::abs(block[r]);
            return;
        case B::none: break;
    }
    const std::size_t rows = out.size();
    row.resize(dim);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t i = 0; i < dim; ++i) row[i] = block[i * rows + r];
        out[r] = f.eval(row);
    }
}

struct WorkerTask {
    const HomogeneousFunction* f;
    std::size_t dim;
    std::int64_t count;
    std::uint64_t seed;
    std::uint32_t route;
    std::uint32_t stream;
    double sigma;
    bool normalize;
    std::size_t block_rows;
    const simd::KernelTable* kernels;
};

Moments run_worker(const WorkerTask& t) {
    GaussianSource gauss(Rng(t.seed, t.route, t.stream));
    Moments m;
    std::vector<double> block(t.dim * t.block_rows);
    std::vector<double> values(t.block_rows);
    std::vector<double> norms(t.block_rows);
    std::vector<double> row;

    std::int64_t remaining = t.count;
    while (remaining > 0) {
        const std::size_t rows = static_cast<std::size_t>(std::min<std::int64_t>(remaining, t.block_rows));
        // Draw sample by sample so the stream usage does not depend on block size.
        for (std::size_t r = 0; r < rows; ++r) {
            for (std::size_t i = 0; i < t.dim; ++i) block[i * rows + r] = t.sigma * gauss.next();
        }
        const std::span<double> view(block.data(), t.dim * rows);
        const std::span<double> out(values.data(), rows);
        if (t.normalize) {
            const std::span<double> nrm(norms.data(), rows);
            t.kernels->sum_squares(view, t.dim, nrm);
            for (std::size_t r = 0; r < rows; ++r) {
                for (int attempt = 0; nrm[r] == 0.0; ++attempt) {
                    if (attempt == kMaxRedraws) throw std::runtime_error("sphere sampling: repeated zero-norm vectors");
                    double acc = 0.0;
                    for (std::size_t i = 0; i < t.dim; ++i) {
                        const double x = t.sigma * gauss.next();
                        block[i * rows + r] = x;
                        acc += x * x;
                    }
                    nrm[r] = acc;
                }
                nrm[r] = std::sqrt(nrm[r]);
            }
            t.kernels->divide_rows(view, t.dim, nrm);
        }
        evaluate_block(*t.f, *t.kernels, view, t.dim, out, row);
        for (std::size_t r = 0; r < rows; ++r) m.add(out[r]);
        remaining -= static_cast<std::int64_t>(rows);
    }
    return m;
}

Moments sample(const HomogeneousFunction& f, std::int64_t n, std::int64_t samples, std::uint64_t seed,
               std::uint32_t route, double sigma, bool normalize, const SamplingOptions& options) {
    if (n < 1) throw InvalidArgument("dimension n must be >= 1");
    if (samples < 2) throw InvalidArgument("samples must be >= 2");
    if (options.workers < 1) throw InvalidArgument("workers must be >= 1");
    if (options.block_rows < 1) throw InvalidArgument("block_rows must be >= 1");
    if (!f.eval && f.batched == HomogeneousFunction::Batched::none) {
        throw InvalidArgument("homogeneous function has no evaluator");
    }

    const simd::KernelTable* k = options.kernels ? options.kernels : &simd::active_kernels();
    const auto workers = static_cast<std::int64_t>(options.workers);
    std::vector<WorkerTask> tasks;
    for (std::int64_t w = 0; w < workers; ++w) {
        const std::int64_t count = samples / workers + (w < samples % workers ? 1 : 0);
        tasks.push_back({&f, static_cast<std::size_t>(n), count, seed, route, static_cast<std::uint32_t>(w), sigma,
                         normalize, options.block_rows, k});
    }

    std::vector<Moments> partial(tasks.size());
    if (tasks.size() == 1) {
        partial[0] = run_worker(tasks[0]);
    } else {
        std::vector<std::exception_ptr> errors(tasks.size());
        {
            std::vector<std::jthread> threads;
            for (std::size_t w = 0; w < tasks.size(); ++w) {
                threads.emplace_back([&, w] {
                    try {
                        partial[w] = run_worker(tasks[w]);
                    } catch (...) {
                        errors[w] = std::current_exception();
                    }
                });
            }
        }
        for (const auto& e : errors) {
            if (e) std::rethrow_exception(e);
        }
    }

    Moments total;
    for (const Moments& m : partial) total.merge(m);
    return total;
}

}  // namespace

std::vector<HomogeneousFunction> builtin_functions() {
    using B = HomogeneousFunction::Batched;
    return {
        {"min-abs", 1,
         [](std::span<const double> x) {
             double acc = std::abs(x[0]);
             for (std::size_t i = 1; i < x.size(); ++i) acc = std::min(acc, std::abs(x[i]));
             return acc;
         },
         B::min_abs},
        {"max-abs", 1,
         [](std::span<const double> x) {
             double acc = std::abs(x[0]);
             for (std::size_t i = 1; i < x.size(); ++i) acc = std::max(acc, std::abs(x[i]));
             return acc;
         },
         B::max_abs},
        {"sum-abs", 1,
         [](std::span<const double> x) {
             double acc = 0.0;
             for (double v : x) acc += std::abs(v);
             return acc;
         },
         B::sum_abs},
        {"sum-squares", 2,
         [](std::span<const double> x) {
             double acc = 0.0;
             for (double v : x) acc += v * v;
             return acc;
         },
         B::sum_squares},
        {"abs-first", 1, [](std::span<const double> x) { return std::abs(x[0]); }, B::abs_first},
    };
}

std::optional<HomogeneousFunction> find_builtin(const std::string& name) {
    for (auto& f : builtin_functions()) {
        if (f.name == name) return f;
    }
    return std::nullopt;
}

Estimate sphere_mean_from_gaussian(const HomogeneousFunction& f, std::int64_t n, std::int64_t samples,
                                   std::uint64_t seed, const SamplingOptions& options) {
    if (f.degree < 0) throw InvalidArgument("homogeneity degree must be >= 0");
    const Moments m = sample(f, n, samples, seed, kGaussianRoute, kHalfVarianceSigma, false, options);
    const double factor = special::gamma_ratio(n, f.degree);
    return {factor * m.mean, factor * m.std_error(), m.count};
}

Estimate sphere_mean_direct(const HomogeneousFunction& f, std::int64_t n, std::int64_t samples, std::uint64_t seed,
                            const SamplingOptions& options) {
    if (!(options.direct_sigma > 0.0)) throw InvalidArgument("direct_sigma must be positive");
    const Moments m = sample(f, n, samples, seed, kDirectRoute, options.direct_sigma, true, options);
    return {m.mean, m.std_error(), m.count};
}

TransferReport transfer_identity_check(const HomogeneousFunction& f, std::int64_t n, std::int64_t samples,
                                       std::uint64_t seed, const SamplingOptions& options) {
    TransferReport report;
    report.gaussian = sphere_mean_from_gaussian(f, n, samples, seed, options);
    report.direct = sphere_mean_direct(f, n, samples, seed, options);
    const double diff = std::abs(report.gaussian.point - report.direct.point);
    const double se = std::hypot(report.gaussian.std_error, report.direct.std_error);
    if (se > 0.0) {
        report.z = diff / se;
        report.agree = report.z <= kAgreementZ;
    } else {
        const double scale = std::max(1.0, std::abs(report.direct.point));
        report.agree = diff <= 1e-12 * scale;
        report.z = report.agree ? 0.0 : std::numeric_limits<double>::infinity();
    }
    return report;
}

}  // namespace spheremin
