#pragma once

#include <cmath>
#include <cstdint>

#include "ffgain/units.hpp"

namespace ffgain::rng {

// SplitMix64 finalizer: a bijective avalanche mix on 64 bits.
inline std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Counter-based stream: hash(seed, k1, k2, ...) -> u64. Every draw is a pure
// function of its coordinates, so any evaluation order (serial, threaded)
// produces identical values.
inline std::uint64_t hash(std::uint64_t seed) { return mix(seed); }

template <typename... Rest>
std::uint64_t hash(std::uint64_t seed, std::uint64_t head, Rest... rest) {
    return hash(mix(seed ^ mix(head)), rest...);
}

// Uniform double in [0, 1) from the top 53 bits.
inline double uniform01(std::uint64_t bits) {
    return static_cast<double>(bits >> 11) * (1.0 / 9007199254740992.0);
}

// Standard normal via Box-Muller; consumes two independent hashes derived
// from the given bits. Deterministic for fixed input.
inline double standard_normal(std::uint64_t bits) {
    const double u1 = uniform01(mix(bits ^ 0x243f6a8885a308d3ULL));
    const double u2 = uniform01(mix(bits ^ 0x13198a2e03707344ULL));
    // Guard u1 = 0; uniform01 < 1 always holds.
    const double r = std::sqrt(-2.0 * std::log(1.0 - u1));
    return r * std::cos(2.0 * pi * u2);
}

// Small sequential PRNG for test-side generators (property tests, shrink-free
// random campaigns). Not used by the deterministic synthesis path.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    double uniform() { return uniform01(next()); }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    double normal() { return standard_normal(next()); }
    std::uint64_t integer(std::uint64_t n) { return next() % n; }

private:
    std::uint64_t state_;
};

}  // namespace ffgain::rng
