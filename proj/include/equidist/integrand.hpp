#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "equidist/interval.hpp"
#include "equidist/partition.hpp"
#include "equidist/unit_point.hpp"

namespace equidist {

/// c0 + c1 x + ... up to degree 6.
struct PolynomialSpec {
    std::vector<double> coefficients;
};

enum class TrigKind { Sin, Cos };

/// sin(2*pi*h*x) or cos(2*pi*h*x), 1 <= h <= 8.
struct TrigSpec {
    TrigKind kind = TrigKind::Sin;
    std::uint32_t frequency = 1;
};

/// Piecewise constant: value[i] on [breaks[i], breaks[i+1]); the last piece
/// also covers x = 1 so the function is total on [0,1].
struct StepSpec {
    std::vector<UnitPoint> breaks; // 0 = b_0 < b_1 < ... < b_K = 1
    std::vector<double> values;    // size K
};

/// Indicator of an interval, honoring its endpoint rule exactly.
struct IndicatorSpec {
    IntervalQuery interval;
};

inline constexpr std::uint32_t kMaxPolynomialDegree = 6;
inline constexpr std::uint32_t kMaxTrigFrequency = 8;

/// A bounded integrand on [0,1]. With `tag` set it evaluates as
/// h(x) * [x in C_tag], the tagged form used by tagged integration.
struct IntegrandSpec {
    std::variant<PolynomialSpec, TrigSpec, StepSpec, IndicatorSpec> body;
    std::optional<TagIndex> tag;

    std::string kind() const;  // "polynomial" | "trig" | "step" | "indicator", "tagged-" prefixed
    bool continuous() const;   // polynomial and trig kinds only
    std::string label() const; // canonical spec string, re-parsable
};

/// Attach a tag factor to an existing spec.
IntegrandSpec with_tag(IntegrandSpec f, TagIndex t);
/// The same spec without its tag factor.
IntegrandSpec without_tag(IntegrandSpec f);

void validate_integrand(const IntegrandSpec& f);

/// h(x) ignoring any tag factor. Step and indicator kinds classify x by
/// exact grid comparison; smooth kinds evaluate in double.
double evaluate_plain(const IntegrandSpec& f, const UnitPoint& x);

/// Full evaluation including the tag factor; cfg is required when f is
/// tagged (the indicator is exact residue-class membership).
double evaluate(const IntegrandSpec& f, const UnitPoint& x, const PartitionConfig* cfg = nullptr);

/// An upper bound for |h'| on [0,1] for continuous kinds.
double derivative_bound(const IntegrandSpec& f);

inline constexpr std::uint64_t kDefaultPanels = std::uint64_t{1} << 20;

/// Reference value of the plain integral of h over [0,1] (any tag factor is
/// ignored: the tagged reference equals the plain one). Closed forms exist
/// for every built-in kind, so `panels` only feeds the midpoint fallback.
double quadrature_reference(const IntegrandSpec& f, std::uint64_t panels = kDefaultPanels);

/// Composite-midpoint rule, the independent route to the same integral.
/// Error is O(1/panels^2) for smooth kinds. Power-of-two panel counts are
/// evaluated at exact grid midpoints.
double midpoint_quadrature(const IntegrandSpec& f, std::uint64_t panels);

/// Step brackets f1 <= h <= f2 for a continuous h, on 2^level equal pieces.
/// Piece values come from the endpoint values offset by the Lipschitz bound
/// times the piece width (plus a fixed 1e-12 guard so the pointwise ordering
/// survives double rounding); the bracket gap shrinks like 2^-level.
std::pair<IntegrandSpec, IntegrandSpec> step_brackets(const IntegrandSpec& f, std::uint32_t level);

/// Built-in integrands: polynomials, trig, steps, indicators.
std::vector<IntegrandSpec> builtin_family();
/// The continuous subset (what the Weyl-type check accepts).
std::vector<IntegrandSpec> builtin_continuous_family();

/// Grammar: "poly:c0,c1,...", "sin:h", "cos:h", "step:b0,...,bK|v0,...,vK-1",
/// "indicator:c,d[,half_open]", each optionally wrapped as "tagged:t:...".
/// Points accept "k/2^p" or exact decimals.
IntegrandSpec parse_integrand(const std::string& text);
std::string format_integrand(const IntegrandSpec& f);

} // namespace equidist
