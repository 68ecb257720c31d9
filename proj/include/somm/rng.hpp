#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace somm {

/// Seedable random source with reproducible, platform-independent output.
///
/// The engine is std::mt19937_64 (bit-exact across conforming standard
/// libraries); all variate transforms are implemented here instead of using
/// std::*_distribution, whose output is implementation-defined.
///
/// Stream splitting: child(i) derives an independent stream from the parent
/// seed and the index i via a splitmix64 mix. Consumers that need draw-count
/// independence (e.g. one stream per generated candidate) take one child per
/// index, so serial and parallel evaluation see identical randomness.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) : seed_(seed), engine_(seed) {}

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1), 53-bit resolution.
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in the open interval (0, 1).
    double uniform_open() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Uniform double in [lo, hi). Degenerate lo == hi yields lo.
    double uniform_in(double lo, double hi) {
        return lo + uniform() * (hi - lo);
    }

    /// Uniform double in the open interval (lo, hi).
    double uniform_in_open(double lo, double hi) {
        return lo + uniform_open() * (hi - lo);
    }

    /// Uniform integer in [0, n), rejection-sampled to avoid modulo bias.
    std::uint64_t uniform_index(std::uint64_t n) {
        if (n <= 1) return 0;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return x % n;
    }

    /// Standard normal via Box-Muller (two uniforms per draw).
    double normal() {
        const double u1 = 1.0 - uniform();  // (0, 1]
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * 3.14159265358979323846 * u2);
    }

    double normal(double mean, double stddev) { return mean + stddev * normal(); }

    /// Independent child stream for the given index.
    Rng child(std::uint64_t index) const {
        return Rng(mix(seed_ + (index + 1) * 0x9E3779B97F4A7C15ULL));
    }

private:
    // splitmix64 finalizer
    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xBF58476D1CE4E5B9ULL;
        z ^= z >> 27;
        z *= 0x94D049BB133111EBULL;
        z ^= z >> 31;
        return z;
    }

    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

}  // namespace somm
