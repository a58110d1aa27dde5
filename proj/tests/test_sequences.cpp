#include <doctest.h>

#include <cmath>
#include <set>

#include "equidist/alpha.hpp"
#include "equidist/sequence.hpp"
#include "equidist/ud_tests.hpp"
#include "oracles.hpp"

using namespace equidist;

namespace {

Sequence fixed_points(std::vector<std::uint64_t> ks, std::uint32_t p) {
    SequenceDescriptor desc{IidUniformParams{0}, ks.size(), p};
    return Sequence(std::move(desc), std::move(ks));
}

} // namespace

TEST_CASE("kronecker frozen values for sqrt2") {
    const Sequence s = kronecker(parse_alpha("sqrt2"), 3, 32);
    CHECK(s.at(0).value() == doctest::Approx(0.41421356).epsilon(1e-8));
    CHECK(s.at(2).value() == doctest::Approx(0.24264069).epsilon(1e-8));
}

TEST_CASE("kronecker with alpha = 1/2 is exactly periodic") {
    const Sequence s = kronecker(parse_alpha("0.5"), 4, 8);
    CHECK(s.at(0) == UnitPoint(128, 8));
    CHECK(s.at(1) == UnitPoint(0, 8));
    CHECK(s.at(2) == UnitPoint(128, 8));
    CHECK(s.at(3) == UnitPoint(0, 8));
}

TEST_CASE("alpha parsing") {
    CHECK_NOTHROW(parse_alpha("sqrt2"));
    CHECK_NOTHROW(parse_alpha("sqrt3"));
    CHECK_NOTHROW(parse_alpha("golden"));
    CHECK_NOTHROW(parse_alpha("e"));
    CHECK_NOTHROW(parse_alpha("pi"));
    CHECK_NOTHROW(parse_alpha("0.25"));
    CHECK_NOTHROW(parse_alpha("1.75")); // integer part drops mod 1
    CHECK(parse_alpha("1.75").fraction() == parse_alpha("0.75").fraction());
    CHECK_THROWS_AS(parse_alpha("wat"), ConfigError);
    CHECK_THROWS_AS(parse_alpha(""), ConfigError);
    CHECK_THROWS_AS(parse_alpha("1.2.3"), ConfigError);
    // The stored fraction of sqrt2 matches the double value to double accuracy.
    const Alpha a = parse_alpha("sqrt2");
    const double frac = std::ldexp(static_cast<double>(a.frac_hi), -64) +
                        std::ldexp(static_cast<double>(a.frac_lo), -128);
    CHECK(frac == doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-15));
}

TEST_CASE("van der Corput base 2 frozen values") {
    const Sequence s = van_der_corput(2, 7, 16);
    CHECK(s.at(0) == UnitPoint(1 << 15, 16)); // 0.5
    CHECK(s.at(1) == UnitPoint(1 << 14, 16)); // 0.25
    CHECK(s.at(2) == UnitPoint(3 << 14, 16)); // 0.75
    CHECK(s.at(3).value() == doctest::Approx(0.125));
    CHECK(s.at(6).value() == doctest::Approx(0.875));
    CHECK_THROWS_AS(van_der_corput(1, 5, 16), ConfigError);
}

TEST_CASE("van der Corput base 3 rounds the radical inverse to the grid") {
    const Sequence s = van_der_corput(3, 3, 20);
    CHECK(s.at(0).value() == doctest::Approx(1.0 / 3).epsilon(1e-5));
    CHECK(s.at(1).value() == doctest::Approx(2.0 / 3).epsilon(1e-5));
    CHECK(s.at(2).value() == doctest::Approx(1.0 / 9).epsilon(1e-5));
}

TEST_CASE("iid_uniform determinism and range") {
    const Sequence a = iid_uniform(1, 100, 16);
    const Sequence b = iid_uniform(1, 100, 16);
    const Sequence c = iid_uniform(2, 100, 16);
    CHECK(a.numerators() == b.numerators());
    CHECK(a.numerators() != c.numerators());
    for (std::size_t i = 0; i < a.size(); ++i)
        CHECK(a.at(i).numerator < (std::uint64_t{1} << 16)); // uniform over [0,1) grid points
}

TEST_CASE("sample_tagged stays inside its class") {
    const PartitionConfig cfg(4, 8);
    const TaggedSequence y = sample_tagged(5, 1, 500, cfg);
    std::set<std::uint64_t> seen;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const UnitPoint x = y.at(i);
        CHECK(is_member(x, 1, cfg));
        CHECK(x.numerator % 4 == 1);
        CHECK(x.numerator > 0);
        CHECK(x.numerator < 256);
        seen.insert(x.numerator);
        CHECK(y.tag_at(i) == 1);
    }
    CHECK(seen.size() > 30); // the draw actually spreads over the class
}

TEST_CASE("sample_tagged with tag 0 never emits the endpoint 0") {
    const PartitionConfig cfg(4, 6);
    const TaggedSequence y = sample_tagged(11, 0, 2000, cfg);
    for (std::size_t i = 0; i < y.size(); ++i) {
        CHECK(y.at(i).numerator > 0);
        CHECK(y.at(i).numerator % 4 == 0);
    }
}

TEST_CASE("sample_tagged empirical mean is near one half") {
    const PartitionConfig cfg(4, 8);
    const TaggedSequence y = sample_tagged(99, 1, 100000, cfg);
    double sum = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i)
        sum += y.at(i).value();
    CHECK(sum / static_cast<double>(y.size()) == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("lift frozen case: one half lifted to class 1 at p=32") {
    const Sequence x = fixed_points({1}, 1); // the single point 0.5
    const PartitionConfig cfg(4, 32);
    const TaggedSequence y = lift_to_tag(x, 1, cfg);
    CHECK(y.at(0).numerator == (std::uint64_t{1} << 31) - 3);
    CHECK(y.at(0).precision == 32);
}

TEST_CASE("lift contract: membership, order, and the 1/n window, exactly") {
    const Sequence x = kronecker(parse_alpha("sqrt2"), 1000, 32);
    const PartitionConfig cfg(8, 32);
    const TaggedSequence y = lift_to_tag(x, 3, cfg);
    REQUIRE(y.size() == x.size());
    for (std::uint64_t n = 1; n <= y.size(); ++n) {
        const UnitPoint xe = x.at(n - 1);
        const UnitPoint ye = y.at(n - 1);
        CHECK(is_member(ye, 3, cfg));
        CHECK(ye < xe);
        CHECK(ye.numerator > 0);
        // |x_n - y_n| < 1/n  <=>  (K - k) * n < 2^32 in exact integers.
        const std::uint64_t diff = xe.numerator_at(32) - ye.numerator;
        CHECK(static_cast<unsigned __int128>(diff) * n < (static_cast<unsigned __int128>(1) << 32));
    }
}

TEST_CASE("lift reports the failing index when the window dies") {
    // Second element is exactly 0, so the window (x_2 - 1/2, x_2) has nothing
    // below it inside (0,1).
    const Sequence x = kronecker(parse_alpha("0.5"), 2, 8);
    const PartitionConfig cfg(4, 8);
    try {
        lift_to_tag(x, 1, cfg);
        FAIL("expected ResolutionExhausted");
    } catch (const ResolutionExhausted& e) {
        CHECK(e.index == 2);
    }
}

TEST_CASE("lift needs partition precision at least the sequence precision") {
    const Sequence x = kronecker(parse_alpha("sqrt2"), 10, 32);
    CHECK_THROWS_AS(lift_to_tag(x, 1, PartitionConfig(4, 16)), ConfigError);
}

TEST_CASE("lift preserves the plain distribution up to the perturbation bound") {
    // If the input passes at tolerance tau, the lift passes at tau + 2/N_min.
    const Sequence x = van_der_corput(2, 2000, 32);
    const auto grid = dyadic_grid();
    const std::vector<std::uint64_t> schedule{100, 1000, 2000};
    const double tau = 0.03;
    REQUIRE(ud_verdict(x, grid, schedule, tau).pass);
    const TaggedSequence y = lift_to_tag(x, 2, PartitionConfig(4, 32));
    CHECK(ud_verdict(y.base(), grid, schedule, tau + 2.0 / 100).pass);
}

TEST_CASE("diagonal spoiler uses each class at most once") {
    const Sequence x = kronecker(parse_alpha("sqrt2"), 5, 32);
    const PartitionConfig cfg(8, 32);
    const TaggedSequence y = diagonal_spoiler(x, cfg);
    CHECK(y.tags() == std::vector<TagIndex>{0, 1, 2, 3, 4});
    CHECK(witness_tags(y) == std::set<TagIndex>{0, 1, 2, 3, 4});
    for (std::size_t i = 0; i < y.size(); ++i)
        CHECK(is_member(y.at(i), y.tags()[i], cfg));
}

TEST_CASE("diagonal spoiler needs at least as many classes as terms") {
    const Sequence x = kronecker(parse_alpha("sqrt2"), 10, 32);
    CHECK_THROWS_AS(diagonal_spoiler(x, PartitionConfig(8, 32)), ConfigError);
}

TEST_CASE("witness tags of single-tag constructions") {
    const PartitionConfig cfg(4, 16);
    CHECK(witness_tags(sample_tagged(1, 3, 50, cfg)) == std::set<TagIndex>{3});
    const Sequence x = van_der_corput(2, 50, 16);
    CHECK(witness_tags(lift_to_tag(x, 2, cfg)) == std::set<TagIndex>{2});
}

TEST_CASE("descriptors regenerate identical prefixes") {
    const PartitionConfig cfg(8, 24);
    const Sequence k = kronecker(parse_alpha("golden"), 200, 24);
    CHECK(materialize(k.descriptor()).numerators() == k.numerators());

    const Sequence v = van_der_corput(5, 200, 24);
    CHECK(materialize(v.descriptor()).numerators() == v.numerators());

    const Sequence u = iid_uniform(77, 200, 24);
    CHECK(materialize(u.descriptor()).numerators() == u.numerators());

    const TaggedSequence s = sample_tagged(77, 5, 200, cfg);
    const TaggedSequence s2 = materialize_tagged(s.base().descriptor());
    CHECK(s2.base().numerators() == s.base().numerators());
    CHECK(s2.tags() == s.tags());

    const TaggedSequence l = lift_to_tag(k, 1, cfg);
    const TaggedSequence l2 = materialize_tagged(l.base().descriptor());
    CHECK(l2.base().numerators() == l.base().numerators());

    const TaggedSequence d = diagonal_spoiler(van_der_corput(2, 100, 24), PartitionConfig(128, 24));
    const TaggedSequence d2 = materialize_tagged(d.base().descriptor());
    CHECK(d2.base().numerators() == d.base().numerators());
    CHECK(d2.tags() == d.tags());

    CHECK_THROWS_AS(materialize_tagged(k.descriptor()), ConfigError);
}

TEST_CASE("generation argument validation") {
    CHECK_THROWS_AS(kronecker(parse_alpha("sqrt2"), 0, 32), ConfigError);
    CHECK_THROWS_AS(kronecker(parse_alpha("sqrt2"), 5, 0), ConfigError);
    CHECK_THROWS_AS(kronecker(parse_alpha("sqrt2"), 5, 53), ConfigError);
    CHECK_THROWS_AS(iid_uniform(1, 0, 16), ConfigError);
}
