#include <stdexcept>
#include <string>

#include "spheremin/simd/kernels.hpp"

namespace spheremin::simd {

#ifndef SPHEREMIN_HAVE_AVX2
namespace detail {
const KernelTable* avx2_table() { return nullptr; }
}  // namespace detail
#endif

std::string_view to_string(Isa isa) {
    switch (isa) {
        case Isa::scalar: return "scalar";
        case Isa::avx2: return "avx2";
    }
    return "?";
}

bool supported(Isa isa) {
    switch (isa) {
        case Isa::scalar: return true;
        case Isa::avx2:
#if defined(__x86_64__) || defined(__i386__)
            return detail::avx2_table() != nullptr && __builtin_cpu_supports("avx2");
#else
            return false;
#endif
    }
    return false;
}

const KernelTable& kernels(Isa isa) {
    if (!supported(isa)) throw std::runtime_error("kernel variant not available: " + std::string(to_string(isa)));
    return isa == Isa::avx2 ? *detail::avx2_table() : detail::scalar_table();
}

const KernelTable& active_kernels() {
    static const KernelTable& table = supported(Isa::avx2) ? kernels(Isa::avx2) : kernels(Isa::scalar);
    return table;
}

}  // namespace spheremin::simd
