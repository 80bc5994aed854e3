#pragma once

#include <cstdint>
#include <random>

namespace knapga {

/// Seeded random source shared by every stochastic operator.
///
/// Wraps std::mt19937_64 (whose output sequence is fixed by the standard) and
/// derives bounded integers and unit reals by hand, so that a given seed
/// produces the same draws on every standard library. The std distributions
/// are implementation-defined and are deliberately not used.
class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed) : engine_(mix(seed)) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [0, bound). bound must be > 0.
    std::uint64_t uniform_index(std::uint64_t bound)
    {
        // Reject the tail so every residue is equally likely.
        const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound);
        std::uint64_t x = next();
        while (x >= limit)
            x = next();
        return x % bound;
    }

    /// Uniform integer in [lo, hi], inclusive.
    std::uint64_t uniform_between(std::uint64_t lo, std::uint64_t hi)
    {
        return lo + uniform_index(hi - lo + 1);
    }

    /// Uniform real in [0, 1) with 53 bits of resolution.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// True with probability p. p <= 0 never fires, p >= 1 always fires.
    bool bernoulli(double p) { return uniform01() < p; }

    bool coin() { return (next() >> 63) != 0; }

private:
    // splitmix64 finalizer: nearby seeds (seed0, seed0 + 1, ...) get unrelated streams.
    static std::uint64_t mix(std::uint64_t z)
    {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::mt19937_64 engine_;
};

} // namespace knapga
