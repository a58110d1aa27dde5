#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <string>

#include "equidist/errors.hpp"

namespace equidist {

// Largest supported grid precision in bits. Keeps every numerator below
// 2^53 (values and interval lengths stay exact in double) and lets
// cross-precision comparisons fit in 128-bit intermediates.
inline constexpr std::uint32_t kMaxPrecision = 52;

using uint128 = unsigned __int128;

/// Exact dyadic rational k/2^p in [0,1]; the carrier of all sequence values.
struct UnitPoint {
    std::uint64_t numerator = 0;
    std::uint32_t precision = 1;

    constexpr UnitPoint() = default;

    UnitPoint(std::uint64_t k, std::uint32_t p) : numerator(k), precision(p) {
        if (p == 0 || p > kMaxPrecision)
            throw ConfigError("UnitPoint precision must be in [1, " +
                              std::to_string(kMaxPrecision) + "], got " + std::to_string(p));
        if (k > (std::uint64_t{1} << p))
            throw ConfigError("UnitPoint numerator " + std::to_string(k) +
                              " exceeds 2^" + std::to_string(p));
    }

    static UnitPoint zero(std::uint32_t p) { return UnitPoint(0, p); }
    static UnitPoint one(std::uint32_t p) { return UnitPoint(std::uint64_t{1} << p, p); }

    // Exact: numerator <= 2^52.
    double value() const { return std::ldexp(static_cast<double>(numerator), -static_cast<int>(precision)); }

    std::string exact() const {
        return std::to_string(numerator) + "/2^" + std::to_string(precision);
    }

    // Numerator rescaled to precision q; exact, requires q >= precision.
    std::uint64_t numerator_at(std::uint32_t q) const {
        if (q < precision)
            throw ConfigError("cannot rescale " + exact() + " to coarser precision " + std::to_string(q));
        return numerator << (q - precision);
    }

    friend bool operator==(const UnitPoint& a, const UnitPoint& b) {
        return a.scaled_() == b.scaled_();
    }
    friend std::strong_ordering operator<=>(const UnitPoint& a, const UnitPoint& b) {
        const uint128 x = a.scaled_(), y = b.scaled_();
        return x < y ? std::strong_ordering::less
                     : (x > y ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

  private:
    // Value scaled to the fixed precision kMaxPrecision + 1; fits in 128 bits.
    uint128 scaled_() const {
        return static_cast<uint128>(numerator) << (kMaxPrecision + 1 - precision);
    }
};

/// Parse "k/2^p" (exact form) or a decimal literal that is exactly
/// representable on the dyadic grid ("0.25", "0", "1"). ConfigError otherwise.
UnitPoint parse_unit_point(const std::string& text);

/// Decimal rendering with enough digits to be exact (value is dyadic).
std::string decimal_string(const UnitPoint& x);

} // namespace equidist
