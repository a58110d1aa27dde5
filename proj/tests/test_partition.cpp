#include <doctest.h>

#include <set>

#include "equidist/partition.hpp"
#include "equidist/rng.hpp"
#include "equidist/unit_point.hpp"
#include "oracles.hpp"

using namespace equidist;

TEST_CASE("unit points validate their range") {
    CHECK_THROWS_AS(UnitPoint(5, 0), ConfigError);
    CHECK_THROWS_AS(UnitPoint(5, 53), ConfigError);
    CHECK_THROWS_AS(UnitPoint(257, 8), ConfigError);
    CHECK_NOTHROW(UnitPoint(256, 8)); // the endpoint 1 is a valid point
    CHECK(UnitPoint::zero(8).value() == 0.0);
    CHECK(UnitPoint::one(8).value() == 1.0);
}

TEST_CASE("unit point comparison crosses precisions exactly") {
    CHECK(UnitPoint(1, 1) == UnitPoint(2, 2));
    CHECK(UnitPoint(1, 1) == UnitPoint(std::uint64_t{1} << 51, 52));
    CHECK(UnitPoint(1, 2) < UnitPoint(1, 1));
    CHECK(UnitPoint(3, 2) > UnitPoint(1, 1));
    CHECK(UnitPoint(1, 52) > UnitPoint::zero(1));
    CHECK(UnitPoint((std::uint64_t{1} << 52) - 1, 52) < UnitPoint::one(1));
}

TEST_CASE("unit point rendering and parsing round-trip") {
    const UnitPoint x(124, 8);
    CHECK(x.exact() == "124/2^8");
    CHECK(decimal_string(x) == "0.484375");
    CHECK(parse_unit_point("124/2^8") == x);
    CHECK(parse_unit_point("0.484375") == x);
    CHECK(parse_unit_point("0.5") == UnitPoint(1, 1));
    CHECK(parse_unit_point("0") == UnitPoint::zero(1));
    CHECK(parse_unit_point("1") == UnitPoint::one(1));
    CHECK(decimal_string(UnitPoint(0, 8)) == "0");
    CHECK(decimal_string(UnitPoint(256, 8)) == "1");
    CHECK(decimal_string(UnitPoint(1, 52)) != decimal_string(UnitPoint(2, 52)));

    CHECK_THROWS_AS(parse_unit_point("0.3"), ConfigError);   // not dyadic
    CHECK_THROWS_AS(parse_unit_point("1.5"), ConfigError);   // outside [0,1]
    CHECK_THROWS_AS(parse_unit_point("2"), ConfigError);
    CHECK_THROWS_AS(parse_unit_point("abc"), ConfigError);
    CHECK_THROWS_AS(parse_unit_point("5/2^64"), ConfigError);
    CHECK_THROWS_AS(parse_unit_point(""), ConfigError);
}

TEST_CASE("partition config validation") {
    CHECK_THROWS_AS(PartitionConfig(1, 8), ConfigError);   // m >= 2
    CHECK_THROWS_AS(PartitionConfig(4, 2), ConfigError);   // m < 2^p
    CHECK_THROWS_AS(PartitionConfig(4, 0), ConfigError);
    CHECK_THROWS_AS(PartitionConfig(4, 60), ConfigError);
    CHECK_NOTHROW(PartitionConfig(4, 3));
    CHECK(PartitionConfig(4, 8).grid_size() == 256);
}

TEST_CASE("tag_of matches the residue rule") {
    const PartitionConfig cfg(4, 8);
    CHECK(tag_of(UnitPoint(5, 8), cfg) == 1);
    CHECK(tag_of(UnitPoint(0, 8), cfg) == 0);
    CHECK(tag_of(UnitPoint(255, 8), cfg) == 3);
    CHECK(is_member(UnitPoint(5, 8), 1, cfg));
    CHECK_FALSE(is_member(UnitPoint(5, 8), 2, cfg));
    CHECK(is_member(UnitPoint(128, 8), 0, cfg));
    CHECK_THROWS_AS(tag_of(UnitPoint(5, 9), cfg), ConfigError); // precision mismatch
    CHECK_THROWS_AS(is_member(UnitPoint(5, 8), 4, cfg), ConfigError); // tag out of range
}

TEST_CASE("every interior point belongs to exactly one class") {
    const PartitionConfig cfg(4, 10);
    for (std::uint64_t k = 1; k < cfg.grid_size(); ++k) {
        const UnitPoint x(k, 10);
        int members = 0;
        for (TagIndex t = 0; t < cfg.tag_count; ++t)
            if (is_member(x, t, cfg)) ++members;
        REQUIRE(members == 1);
    }
}

TEST_CASE("pick_in_interval frozen cases") {
    const PartitionConfig cfg(4, 8);
    SUBCASE("largest multiple of 4 strictly inside (1/4, 1/2)") {
        const UnitPoint r = pick_in_interval(UnitPoint(64, 8), UnitPoint(128, 8), 0, cfg);
        CHECK(r == UnitPoint(124, 8));
    }
    SUBCASE("largest residue-3 point inside (0, 1)") {
        const UnitPoint r = pick_in_interval(UnitPoint::zero(8), UnitPoint::one(8), 3, cfg);
        CHECK(r == UnitPoint(255, 8));
    }
    SUBCASE("narrow interval with only a wrong-residue candidate is exhausted") {
        CHECK_THROWS_AS(pick_in_interval(UnitPoint(64, 8), UnitPoint(66, 8), 3, cfg),
                        ResolutionExhausted);
    }
    SUBCASE("degenerate interval is a config error") {
        CHECK_THROWS_AS(pick_in_interval(UnitPoint(64, 8), UnitPoint(64, 8), 0, cfg), ConfigError);
    }
}

TEST_CASE("pick_in_interval agrees with the exhaustive oracle") {
    // Randomized endpoints at several precisions, including narrow intervals
    // that exhaust the resolution; the oracle scans every grid point.
    std::uint64_t violations = 0;
    for (std::uint64_t trial = 0; trial < 400; ++trial) {
        const std::uint64_t s = splitmix64_at(7, trial);
        const std::uint32_t p = 6 + static_cast<std::uint32_t>(s % 5); // 6..10
        const std::uint64_t m = 2 + (splitmix64_at(8, trial) % 9);     // 2..10
        if (m >= (std::uint64_t{1} << p)) continue;
        const PartitionConfig cfg(m, p);
        const std::uint64_t grid = cfg.grid_size();
        std::uint64_t a = splitmix64_at(9, trial) % grid;
        std::uint64_t b = splitmix64_at(10, trial) % (grid + 1);
        if (a == b) b = a + 1;
        if (a > b) std::swap(a, b);
        const UnitPoint lo(a, p), hi(b, p);
        const TagIndex t = splitmix64_at(11, trial) % m;
        const auto expect = oracles::brute_pick(lo, hi, t, cfg);
        if (expect) {
            const UnitPoint got = pick_in_interval(lo, hi, t, cfg);
            if (got.numerator != *expect) ++violations;
        } else {
            CHECK_THROWS_AS(pick_in_interval(lo, hi, t, cfg), ResolutionExhausted);
        }
    }
    CHECK(violations == 0);
}

TEST_CASE("pick_in_interval result contract") {
    const PartitionConfig cfg(8, 16);
    for (std::uint64_t trial = 0; trial < 200; ++trial) {
        const std::uint64_t grid = cfg.grid_size();
        std::uint64_t a = splitmix64_at(21, trial) % (grid - 200);
        const std::uint64_t b = a + 9 + splitmix64_at(22, trial) % 190;
        const TagIndex t = splitmix64_at(23, trial) % 8;
        const UnitPoint lo(a, 16), hi(b, 16);
        // Width > m/2^p, so density guarantees success.
        const UnitPoint r = pick_in_interval(lo, hi, t, cfg);
        CHECK(lo < r);
        CHECK(r < hi);
        CHECK(tag_of(r, cfg) == t);
        CHECK(r.numerator > 0);
        CHECK(r.numerator < grid);
    }
}

TEST_CASE("density at resolution: wide-enough intervals always contain every class") {
    const PartitionConfig cfg(4, 8);
    const std::uint64_t grid = cfg.grid_size();
    for (std::uint64_t a = 0; a < grid; ++a) {
        // Smallest width with a guarantee: (b-a) * 2^p > m.
        const std::uint64_t b = a + cfg.tag_count + 1;
        if (b > grid) break;
        for (TagIndex t = 0; t < cfg.tag_count; ++t)
            CHECK_NOTHROW(pick_in_interval(UnitPoint(a, 8), UnitPoint(b, 8), t, cfg));
    }
}

TEST_CASE("largest_tagged_in edge cases") {
    const PartitionConfig cfg(4, 8);
    CHECK_FALSE(largest_tagged_in(0, 0, 1, cfg).has_value());
    CHECK_FALSE(largest_tagged_in(0, 1, 0, cfg).has_value()); // open range (0,1) is empty
    CHECK_FALSE(largest_tagged_in(5, 5, 1, cfg).has_value());
    CHECK_FALSE(largest_tagged_in(10, 11, 2, cfg).has_value()); // empty open range
    const auto k = largest_tagged_in(0, 256, 3, cfg);
    REQUIRE(k.has_value());
    CHECK(*k == 255);
}
