#include <algorithm>
#include <cmath>

#include "spheremin/simd/kernels.hpp"

namespace spheremin::simd {

namespace {

void min_abs(std::span<const double> block, std::size_t dim, std::span<double> out) {
    const std::size_t rows = out.size();
    for (std::size_t r = 0; r < rows; ++r) {
        double acc = std::abs(block[r]);
        for (std::size_t i = 1; i < dim; ++i) acc = std::min(acc, std::abs(block[i * rows + r]));
        out[r] = acc;
    }
}

void max_abs(std::span<const double> block, std::size_t dim, std::span<double> out) {
    const std::size_t rows = out.size();
    for (std::size_t r = 0; r < rows; ++r) {
        double acc = std::abs(block[r]);
        for (std::size_t i = 1; i < dim; ++i) acc = std::max(acc, std::abs(block[i * rows + r]));
        out[r] = acc;
    }
}

void sum_abs(std::span<const double> block, std::size_t dim, std::span<double> out) {
    const std::size_t rows = out.size();
    for (std::size_t r = 0; r < rows; ++r) {
        double acc = 0.0;
        for (std::size_t i = 0; i < dim; ++i) acc += std::abs(block[i * rows + r]);
        out[r] = acc;
    }
}

void sum_squares(std::span<const double> block, std::size_t dim, std::span<double> out) {
    const std::size_t rows = out.size();
    for (std::size_t r = 0; r < rows; ++r) {
        double acc = 0.0;
        for (std::size_t i = 0; i < dim; ++i) {
            const double x = block[i * rows + r];
            acc += x * x;
        }
        out[r] = acc;
    }
}

void divide_rows(std::span<double> block, std::size_t dim, std::span<const double> divisors) {
    const std::size_t rows = divisors.size();
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t r = 0; r < rows; ++r) block[i * rows + r] /= divisors[r];
    }
}

constexpr KernelTable kScalar{Isa::scalar, min_abs, max_abs, sum_abs, sum_squares, divide_rows};

}  // namespace

namespace detail {
const KernelTable& scalar_table() { return kScalar; }
}  // namespace detail

}  // namespace spheremin::simd
