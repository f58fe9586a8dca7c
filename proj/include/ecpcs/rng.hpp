#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace ecpcs {

/// Deterministic random source. Bounded draws are implemented by hand so a
/// given seed yields the same sequence on every platform and standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(mix(seed)) {}

    /// Stream derivation: (base, stream) pairs map to decorrelated seeds, so
    /// independent workers can each own a reproducible generator.
    static std::uint64_t derive(std::uint64_t base, std::uint64_t stream);

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform integer in [0, bound); bound must be positive.
    std::uint64_t uniform_int(std::uint64_t bound);

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform_double();

private:
    static std::uint64_t mix(std::uint64_t x);

    std::mt19937_64 engine_;
};

/// Index of the maximum entry; exact ties are resolved by a uniform draw over
/// the tied indices. `tied`, when given, reports whether a tie occurred.
std::size_t stable_argmax(std::span<const double> values, Rng& rng, bool* tied = nullptr);

}  // namespace ecpcs
