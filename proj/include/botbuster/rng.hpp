#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace botbuster {

/// Deterministic random source used throughout the generators.
///
/// The engine is std::mt19937_64, whose output sequence is mandated by the
/// standard, so identical seeds reproduce identical traces on any platform.
/// All variate transforms below are hand-rolled on top of the raw 64-bit
/// stream for the same reason: std::uniform_real_distribution and friends
/// are not guaranteed to produce the same values across implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed)
        : engine_(seed)
    {
    }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1), 53-bit resolution.
    double uniform()
    {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in (0, 1]; safe as a log() argument.
    double uniform_positive()
    {
        return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
    }

    /// Exponential inter-arrival with the given rate.
    double exponential(double rate)
    {
        return -std::log(uniform_positive()) / rate;
    }

    /// Uniform integer in [0, n), n >= 1. Uses the high-multiply reduction;
    /// the modulo bias is below n / 2^64 and does not affect determinism.
    std::uint64_t uniform_index(std::uint64_t n)
    {
        const auto x = static_cast<unsigned __int128>(engine_());
        return static_cast<std::uint64_t>((x * n) >> 64);
    }

    /// Uniform double in [lo, hi).
    double uniform_in(double lo, double hi)
    {
        return lo + (hi - lo) * uniform();
    }

private:
    std::mt19937_64 engine_;
};

/// splitmix64 finalizer; used to derive independent per-user seed streams
/// from a base seed so generation order never affects the output.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt)
{
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace botbuster
