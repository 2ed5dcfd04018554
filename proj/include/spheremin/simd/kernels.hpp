#pragma once

#include <cstddef>
#include <span>
#include <string_view>

// Batched reductions over blocks of sample vectors.
//
// A block holds `rows` vectors of dimension `dim` in coordinate-major order:
// coordinate i of row r lives at block[i * rows + r]. Every kernel walks
// the coordinates in index order for each row, so the AVX2 variants (four
// rows per lane group, no FMA) reproduce the scalar reference bit for bit.

namespace spheremin::simd {

enum class Isa { scalar, avx2 };

std::string_view to_string(Isa isa);

using RowReduce = void (*)(std::span<const double> block, std::size_t dim, std::span<double> out);
using RowDivide = void (*)(std::span<double> block, std::size_t dim, std::span<const double> divisors);

struct KernelTable {
    Isa isa;
    RowReduce min_abs;      // out[r] = min_i |x_ri|
    RowReduce max_abs;      // out[r] = max_i |x_ri|
    RowReduce sum_abs;      // out[r] = sum_i |x_ri|
    RowReduce sum_squares;  // out[r] = sum_i x_ri^2
    RowDivide divide_rows;  // x_ri /= divisors[r]
};

/// True when the running CPU can execute the given variant.
bool supported(Isa isa);

/// Kernel table for a specific variant; throws std::runtime_error if the
/// variant is not compiled in or not supported by this CPU.
const KernelTable& kernels(Isa isa);

/// Best supported variant, detected once per process.
const KernelTable& active_kernels();

namespace detail {
const KernelTable& scalar_table();
const KernelTable* avx2_table();  // nullptr when not compiled in
}  // namespace detail

}  // namespace spheremin::simd
