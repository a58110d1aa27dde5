#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "equidist/errors.hpp"
#include "equidist/unit_point.hpp"

namespace equidist {

using TagIndex = std::uint64_t;

/// Parameters (m, p) of the residue-class partition of the dyadic grid k/2^p:
/// class C_t holds the interior grid points with k ≡ t (mod m). The classes
/// are pairwise disjoint, cover the grid, and each one meets every open
/// interval wider than m/2^p.
struct PartitionConfig {
    std::uint64_t tag_count = 2; // m
    std::uint32_t precision = 8; // p

    PartitionConfig() = default;

    PartitionConfig(std::uint64_t m, std::uint32_t p) : tag_count(m), precision(p) {
        if (m < 2)
            throw ConfigError("partition needs at least 2 tags, got m=" + std::to_string(m));
        if (p == 0 || p > kMaxPrecision)
            throw ConfigError("partition precision must be in [1, " +
                              std::to_string(kMaxPrecision) + "], got " + std::to_string(p));
        if (m >= (std::uint64_t{1} << p))
            throw ConfigError("partition requires m < 2^p (m=" + std::to_string(m) +
                              ", p=" + std::to_string(p) + ")");
    }

    std::uint64_t grid_size() const { return std::uint64_t{1} << precision; }

    friend bool operator==(const PartitionConfig&, const PartitionConfig&) = default;
};

inline void require_matching_precision(const UnitPoint& x, const PartitionConfig& cfg) {
    if (x.precision != cfg.precision)
        throw ConfigError("point precision " + std::to_string(x.precision) +
                          " does not match partition precision " + std::to_string(cfg.precision));
}

inline void require_valid_tag(TagIndex t, const PartitionConfig& cfg) {
    if (t >= cfg.tag_count)
        throw ConfigError("tag " + std::to_string(t) + " out of range [0, " +
                          std::to_string(cfg.tag_count) + ")");
}

/// Residue class of x = k/2^p: k mod m.
inline TagIndex tag_of(const UnitPoint& x, const PartitionConfig& cfg) {
    require_matching_precision(x, cfg);
    return x.numerator % cfg.tag_count;
}

inline bool is_member(const UnitPoint& x, TagIndex t, const PartitionConfig& cfg) {
    require_valid_tag(t, cfg);
    return tag_of(x, cfg) == t;
}

/// Largest k with lo_exclusive < k < hi_exclusive and k ≡ t (mod m), if any.
inline std::optional<std::uint64_t> largest_tagged_in(std::uint64_t lo_exclusive,
                                                      std::uint64_t hi_exclusive,
                                                      TagIndex t,
                                                      const PartitionConfig& cfg) {
    if (hi_exclusive <= lo_exclusive + 1)
        return std::nullopt;
    const std::uint64_t hi = hi_exclusive - 1;
    if (hi < t)
        return std::nullopt;
    const std::uint64_t k = hi - (hi - t) % cfg.tag_count;
    if (k <= lo_exclusive)
        return std::nullopt;
    return k;
}

namespace detail {

// floor(x * 2^q), exact at any relative precision.
inline std::uint64_t floor_at(const UnitPoint& x, std::uint32_t q) {
    if (x.precision <= q)
        return x.numerator << (q - x.precision);
    return x.numerator >> (x.precision - q);
}

// ceil(x * 2^q)
inline std::uint64_t ceil_at(const UnitPoint& x, std::uint32_t q) {
    if (x.precision <= q)
        return x.numerator << (q - x.precision);
    const std::uint32_t s = x.precision - q;
    return (x.numerator >> s) + ((x.numerator & ((std::uint64_t{1} << s) - 1)) != 0 ? 1 : 0);
}

} // namespace detail

/// The point k/2^p with the largest k such that a < k/2^p < b and
/// k ≡ t (mod m). The result lies in the open interval (a,b) and in C_t;
/// endpoints 0 and 1 are never returned.
inline UnitPoint pick_in_interval(const UnitPoint& a, const UnitPoint& b, TagIndex t,
                                  const PartitionConfig& cfg) {
    require_valid_tag(t, cfg);
    if (!(a < b))
        throw ConfigError("pick_in_interval requires a < b, got " + a.exact() + " and " + b.exact());
    const std::uint32_t q = cfg.precision;
    // k > a*2^q  <=>  k >= floor(a*2^q) + 1;  k < b*2^q  <=>  k <= ceil(b*2^q) - 1
    const std::uint64_t lo_exclusive = detail::floor_at(a, q);
    const std::uint64_t hi_exclusive = detail::ceil_at(b, q);
    const auto k = largest_tagged_in(lo_exclusive, hi_exclusive, t, cfg);
    if (!k)
        throw ResolutionExhausted("no point of class " + std::to_string(t) + " inside (" +
                                  a.exact() + ", " + b.exact() + ") at precision " +
                                  std::to_string(q));
    return UnitPoint(*k, q);
}

} // namespace equidist
