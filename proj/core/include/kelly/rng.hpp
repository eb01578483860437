#pragma once

#include <cstdint>
#include <random>

namespace kelly {

/// SplitMix64 finalizer; a bijective 64-bit mixer.
[[nodiscard]] constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Seed of the private substream for `index` under a master seed. Depends on
/// (seed, index) only.
[[nodiscard]] constexpr std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) noexcept {
    return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632BE59BD9B4E019ULL));
}

/// Deterministic stream used by all simulations. Conversions to doubles are
/// done by hand: the std distributions are not reproducible across
/// standard library implementations.
class Stream {
public:
    Stream(std::uint64_t seed, std::uint64_t index) : engine_(substream_seed(seed, index)) {}

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() noexcept { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// +1 with probability p, -1 otherwise.
    int sign(double p) noexcept { return uniform() < p ? 1 : -1; }

    /// Standard normal by Box-Muller (one value per call).
    double normal() noexcept;

private:
    std::mt19937_64 engine_;
};

}  // namespace kelly
