#pragma once

#include <cstdint>
#include <random>

namespace spheremin {

/// Seeded uniform source. Each (seed, route, stream) triple gives an
/// independent mt19937_64 substream through std::seed_seq, so parallel
/// workers and the two sides of a cross-check never share draws.
class Rng {
public:
    Rng(std::uint64_t seed, std::uint32_t route, std::uint32_t stream);

    /// Uniform on the open interval (0, 1), 53 random bits.
    double uniform_open() {
        return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
    }

private:
    std::mt19937_64 engine_;
};

/// Standard normal variates by the Box-Muller transform,
///   r = sqrt(-2 ln u1),  z1 = r cos(2 pi u2),  z2 = r sin(2 pi u2),
/// handing out z1 then z2 from each pair.
class GaussianSource {
public:
    explicit GaussianSource(Rng rng) : rng_(rng) {}

    double next();

private:
    Rng rng_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace spheremin
