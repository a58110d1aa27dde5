#pragma once

#include <string>

#include "equidist/errors.hpp"
#include "equidist/unit_point.hpp"

namespace equidist {

enum class EndpointRule {
    Closed,   // [c, d] — the default convention everywhere
    HalfOpen, // [c, d) — used by the step-bracket machinery
};

/// A subinterval of [0,1] with dyadic endpoints. Counting tests and indicator
/// integrands share this type so a count and an integral refer to the very
/// same set of points.
struct IntervalQuery {
    UnitPoint lower;
    UnitPoint upper;
    EndpointRule rule = EndpointRule::Closed;

    IntervalQuery() = default;

    IntervalQuery(UnitPoint c, UnitPoint d, EndpointRule r = EndpointRule::Closed)
        : lower(c), upper(d), rule(r) {
        if (!(lower < upper))
            throw ConfigError("interval needs lower < upper, got [" + lower.exact() + ", " +
                              upper.exact() + ")");
    }

    bool contains(const UnitPoint& x) const {
        if (x < lower) return false;
        if (rule == EndpointRule::HalfOpen) return x < upper;
        return x <= upper;
    }

    /// Interval length d - c: the value every counting ratio is compared to.
    double target() const { return upper.value() - lower.value(); }

    std::string describe() const {
        return "[" + lower.exact() + ", " + upper.exact() +
               (rule == EndpointRule::HalfOpen ? ")" : "]");
    }
};

} // namespace equidist
