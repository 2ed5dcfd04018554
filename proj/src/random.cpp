#include "spheremin/random.hpp"

#include <cmath>

namespace spheremin {

namespace {

std::mt19937_64 seeded_engine(std::uint64_t seed, std::uint32_t route, std::uint32_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu), static_cast<std::uint32_t>(seed >> 32), route,
                      stream};
    return std::mt19937_64(seq);
}

constexpr double kTwoPi = 6.283185307179586476925;

}  // namespace

Rng::Rng(std::uint64_t seed, std::uint32_t route, std::uint32_t stream)
    : engine_(seeded_engine(seed, route, stream)) {}

double GaussianSource::next() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = rng_.uniform_open();
    const double u2 = rng_.uniform_open();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = kTwoPi * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
}

}  // namespace spheremin
