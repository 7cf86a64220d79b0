#pragma once

// Seeded, implementation-pinned random numbers (splitmix64 + Box-Muller),
// so identical seeds give identical streams on every platform and standard
// library. Every random artifact in reports records its seed.

#include <cstdint>

#include "sphmult/harmonic_basis.hpp"

namespace sphmult {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// uniform in [0, 1)
    double next_unit() { return (next_u64() >> 11) * 0x1.0p-53; }

    /// standard normal via Box-Muller
    double next_gaussian();

private:
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// Band-limited function with N(0,1) coefficients.
CoeffTable random_band_limited(Rng& rng, int K);

} // namespace sphmult
