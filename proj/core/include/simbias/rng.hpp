#pragma once

#include <cstdint>
#include <limits>

namespace simbias {

// SplitMix64 (Steele, Lea & Flood 2014). Small, counter-friendly and fully
// specified, so every platform produces the same stream. Satisfies
// UniformRandomBitGenerator, but the library never routes it through
// <random> distributions: those are implementation-defined.
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit constexpr SplitMix64(std::uint64_t state) noexcept : state_(state) {}

    constexpr result_type operator()() noexcept {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix(state_);
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
};

// Per-draw seed for global draw `index` under `master_seed`. Depends only on
// the global index, never on how draws are split across shards.
constexpr std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index) noexcept {
    return SplitMix64::mix(SplitMix64::mix(master_seed ^ 0x5851F42D4C957F2DULL) +
                           (index + 1) * 0x9E3779B97F4A7C15ULL);
}

// Uniform double in [0, 1) with 53 random bits.
double uniform01(SplitMix64& rng) noexcept;

// Uniform integer in [0, bound) by rejection; bound must be > 0.
std::uint64_t uniform_below(SplitMix64& rng, std::uint64_t bound) noexcept;

// Standard normal via Box-Muller (one variate per call, the sine branch is
// discarded so the stream position depends only on the call count).
double standard_normal(SplitMix64& rng) noexcept;

bool fair_coin(SplitMix64& rng) noexcept;

}  // namespace simbias
