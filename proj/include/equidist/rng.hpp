#pragma once

#include <cstdint>

namespace equidist {

// Counter-addressable splitmix64 stream (Steele, Lea, Flood 2014). Element i
// of the stream seeded by s is mix(s + (i+1)*phi64), so any element can be
// produced without generating its predecessors. This is the generator
// recorded as "splitmix64" in report manifests.

inline constexpr std::uint64_t kGolden64 = 0x9E3779B97F4A7C15ull;

inline std::uint64_t splitmix64_mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t index) {
    return splitmix64_mix(seed + (index + 1) * kGolden64);
}

// Exactly uniform draw in [0, range) by rejection over a nested stream.
inline std::uint64_t uniform_below(std::uint64_t element_seed, std::uint64_t range) {
    if ((range & (range - 1)) == 0)
        return splitmix64_at(element_seed, 0) & (range - 1);
    const std::uint64_t rem = (0 - range) % range; // 2^64 mod range
    for (std::uint64_t attempt = 0;; ++attempt) {
        const std::uint64_t r = splitmix64_at(element_seed, attempt);
        if (r <= ~rem) // r below the largest multiple of range
            return r % range;
    }
}

} // namespace equidist
