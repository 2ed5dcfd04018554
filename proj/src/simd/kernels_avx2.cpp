// Compiled with -mavx2 (no -mfma). Reached only through the dispatch table
// after a runtime CPU check.

#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "spheremin/simd/kernels.hpp"

namespace spheremin::simd {

namespace {

inline __m256d abs_pd(__m256d v) { return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v); }

// Four rows per iteration; leftover rows take the scalar path, which applies
// the same operation sequence.

void min_abs(std::span<const double> block, std::size_t dim, std::span<double> out) {
    const std::size_t rows = out.size();
    const std::size_t vec_rows = rows - rows % 4;
    const double* x = block.data();
    for (std::size_t r = 0; r < vec_rows; r += 4) {
        __m256d acc = abs_pd(_mm256_loadu_pd(x + r));
        for (std::size_t i = 1; i < dim; ++i) acc = _mm256_min_pd(acc, abs_pd(_mm256_loadu_pd(x + i * rows + r)));
        _mm256_storeu_pd(out.data() + r, acc);
    }
    for (std::size_t r = vec_rows; r < rows; ++r) {
        double acc = std::abs(x[r]);
        for (std::size_t i = 1; i < dim; ++i) acc = std::min(acc, std::abs(x[i * rows + r]));
        out[r] = acc;
    }
}

void max_abs(std::span<const double> block, std::size_t dim, std::span<double> out) {
    const std::size_t rows = out.size();
    const std::size_t vec_rows = rows - rows % 4;
    const double* x = block.data();
    for (std::size_t r = 0; r < vec_rows; r += 4) {
        __m256d acc = abs_pd(_mm256_loadu_pd(x + r));
        for (std::size_t i = 1; i < dim; ++i) acc = _mm256_max_pd(acc, abs_pd(_mm256_loadu_pd(x + i * rows + r)));
        _mm256_storeu_pd(out.data() + r, acc);
    }
    for (std::size_t r = vec_rows; r < rows; ++r) {
        double acc = std::abs(x[r]);
        for (std::size_t i = 1; i < dim; ++i) acc = std::max(acc, std::abs(x[i * rows + r]));
        out[r] = acc;
    }
}

void sum_abs(std::span<const double> block, std::size_t dim, std::span<double> out) {
    const std::size_t rows = out.size();
    const std::size_t vec_rows = rows - rows % 4;
    const double* x = block.data();
    for (std::size_t r = 0; r < vec_rows; r += 4) {
        __m256d acc = _mm256_setzero_pd();
        for (std::size_t i = 0; i < dim; ++i) acc = _mm256_add_pd(acc, abs_pd(_mm256_loadu_pd(x + i * rows + r)));
        _mm256_storeu_pd(out.data() + r, acc);
    }
    for (std::size_t r = vec_rows; r < rows; ++r) {
        double acc = 0.0;
        for (std::size_t i = 0; i < dim; ++i) acc += std::abs(x[i * rows + r]);
        out[r] = acc;
    }
}

void sum_squares(std::span<const double> block, std::size_t dim, std::span<double> out) {
    const std::size_t rows = out.size();
    const std::size_t vec_rows = rows - rows % 4;
    const double* x = block.data();
    for (std::size_t r = 0; r < vec_rows; r += 4) {
        __m256d acc = _mm256_setzero_pd();
        for (std::size_t i = 0; i < dim; ++i) {
            const __m256d v = _mm256_loadu_pd(x + i * rows + r);
            acc = _mm256_add_pd(acc, _mm256_mul_pd(v, v));
        }
        _mm256_storeu_pd(out.data() + r, acc);
    }
    for (std::size_t r = vec_rows; r < rows; ++r) {
        double acc = 0.0;
        for (std::size_t i = 0; i < dim; ++i) {
            const double v = x[i * rows + r];
            acc += v * v;
        }
        out[r] = acc;
    }
}

void divide_rows(std::span<double> block, std::size_t dim, std::span<const double> divisors) {
    const std::size_t rows = divisors.size();
    const std::size_t vec_rows = rows - rows % 4;
    double* x = block.data();
    for (std::size_t i = 0; i < dim; ++i) {
        double* row = x + i * rows;
        for (std::size_t r = 0; r < vec_rows; r += 4) {
            _mm256_storeu_pd(row + r, _mm256_div_pd(_mm256_loadu_pd(row + r), _mm256_loadu_pd(divisors.data() + r)));
        }
        for (std::size_t r = vec_rows; r < rows; ++r) row[r] /= divisors[r];
    }
}

constexpr KernelTable kAvx2{Isa::avx2, min_abs, max_abs, sum_abs, sum_squares, divide_rows};

}  // namespace

namespace detail {
const KernelTable* avx2_table() { return &kAvx2; }
}  // namespace detail

}  // namespace spheremin::simd
