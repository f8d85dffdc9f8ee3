#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace evid {

/// Deterministic splittable generator. Every stochastic routine receives one
/// of these seeded from a single per-command seed; forked streams are
/// decorrelated by hashing, so adding a consumer never shifts the draws seen
/// by another.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed), seed_(seed) {
        // Warm up so that small seeds do not leak structure.
        next_u64();
        next_u64();
    }

    /// Independent stream derived from the original seed and a stream id.
    Rng fork(std::uint64_t stream) const {
        return Rng(mix(seed_ ^ mix(stream + 0x9E3779B97F4A7C15ULL)));
    }

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix(state_);
    }

    /// Uniform draw in [0,1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform draw in [lo,hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal via Box-Muller (no cached second value).
    double normal() {
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    /// Uniform integer in [0,n).
    std::size_t index(std::size_t n) { return static_cast<std::size_t>(next_u64() % n); }

private:
    static std::uint64_t mix(std::uint64_t z) {
        // splitmix64 finalizer
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
    std::uint64_t seed_;
};

}  // namespace evid
