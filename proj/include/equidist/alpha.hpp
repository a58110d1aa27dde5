#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "equidist/unit_point.hpp"

namespace equidist {

/// Kronecker rotation number, held as its fractional part in 128-bit fixed
/// point so that {alpha*n} stays exact to ~2^-108 over any desk-scale prefix.
/// Named constants: sqrt2, sqrt3, golden, e, pi (fractional parts).
/// Decimal literals ("0.5", "1.25") are truncated to the same 128-bit grid.
struct Alpha {
    std::string spec;       // as given: "sqrt2" or the decimal literal
    std::uint64_t frac_hi = 0;
    std::uint64_t frac_lo = 0;

    uint128 fraction() const { return (static_cast<uint128>(frac_hi) << 64) | frac_lo; }
};

Alpha parse_alpha(std::string_view s);

// {alpha * n} as a 128-bit fraction (wrapping product drops the integer part).
inline uint128 alpha_times_mod1(const Alpha& a, std::uint64_t n) {
    const uint128 lo = static_cast<uint128>(n) * a.frac_lo;
    const uint128 hi = static_cast<uint128>(n) * a.frac_hi;
    return (hi << 64) + lo;
}

} // namespace equidist
