#include "equidist/integrand.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "equidist/errors.hpp"
#include "equidist/kahan.hpp"

namespace equidist {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Widens the step brackets just enough that pointwise ordering against the
// bracketed function holds in double arithmetic, not only in exact math.
constexpr double kBracketGuard = 1e-12;

double eval_polynomial(const PolynomialSpec& s, double x) {
    double acc = 0.0;
    for (auto it = s.coefficients.rbegin(); it != s.coefficients.rend(); ++it)
        acc = acc * x + *it;
    return acc;
}

double eval_trig(const TrigSpec& s, double x) {
    const double arg = kTwoPi * s.frequency * x;
    return s.kind == TrigKind::Sin ? std::sin(arg) : std::cos(arg);
}

double eval_step(const StepSpec& s, const UnitPoint& x) {
    // Piece i covers [breaks[i], breaks[i+1]); x = 1 falls to the last piece.
    // upper_bound finds the first break > x; its predecessor starts x's piece.
    auto it = std::upper_bound(s.breaks.begin(), s.breaks.end(), x);
    if (it == s.breaks.end()) return s.values.back(); // x = 1
    const auto piece = static_cast<std::size_t>(it - s.breaks.begin()) - 1;
    return s.values[piece];
}

double eval_step_double(const StepSpec& s, double x) {
    std::size_t piece = s.values.size() - 1;
    for (std::size_t i = 1; i < s.breaks.size(); ++i) {
        if (x < s.breaks[i].value()) {
            piece = i - 1;
            break;
        }
    }
    return s.values[piece];
}

double eval_plain_double(const IntegrandSpec& f, double x) {
    struct Visitor {
        double x;
        double operator()(const PolynomialSpec& s) const { return eval_polynomial(s, x); }
        double operator()(const TrigSpec& s) const { return eval_trig(s, x); }
        double operator()(const StepSpec& s) const { return eval_step_double(s, x); }
        double operator()(const IndicatorSpec& s) const {
            const double c = s.interval.lower.value();
            const double d = s.interval.upper.value();
            if (x < c) return 0.0;
            const bool in = (s.interval.rule == EndpointRule::HalfOpen) ? x < d : x <= d;
            return in ? 1.0 : 0.0;
        }
    };
    return std::visit(Visitor{x}, f.body);
}

} // namespace

std::string IntegrandSpec::kind() const {
    struct Visitor {
        std::string operator()(const PolynomialSpec&) const { return "polynomial"; }
        std::string operator()(const TrigSpec&) const { return "trig"; }
        std::string operator()(const StepSpec&) const { return "step"; }
        std::string operator()(const IndicatorSpec&) const { return "indicator"; }
    };
    const std::string base = std::visit(Visitor{}, body);
    return tag ? "tagged-" + base : base;
}

bool IntegrandSpec::continuous() const {
    return std::holds_alternative<PolynomialSpec>(body) || std::holds_alternative<TrigSpec>(body);
}

std::string IntegrandSpec::label() const { return format_integrand(*this); }

IntegrandSpec with_tag(IntegrandSpec f, TagIndex t) {
    f.tag = t;
    return f;
}

IntegrandSpec without_tag(IntegrandSpec f) {
    f.tag.reset();
    return f;
}

void validate_integrand(const IntegrandSpec& f) {
    struct Visitor {
        void operator()(const PolynomialSpec& s) const {
            if (s.coefficients.empty())
                throw ConfigError("polynomial needs at least one coefficient");
            if (s.coefficients.size() > kMaxPolynomialDegree + 1)
                throw ConfigError("polynomial degree exceeds " +
                                  std::to_string(kMaxPolynomialDegree));
            for (double c : s.coefficients)
                if (!std::isfinite(c)) throw ConfigError("polynomial coefficient is not finite");
        }
        void operator()(const TrigSpec& s) const {
            if (s.frequency < 1 || s.frequency > kMaxTrigFrequency)
                throw ConfigError("trig frequency must be in [1, " +
                                  std::to_string(kMaxTrigFrequency) + "]");
        }
        void operator()(const StepSpec& s) const {
            if (s.breaks.size() < 2) throw ConfigError("step function needs at least one piece");
            if (s.values.size() + 1 != s.breaks.size())
                throw ConfigError("step function needs exactly one value per piece");
            if (!(s.breaks.front() == UnitPoint::zero(1)) ||
                !(s.breaks.back() == UnitPoint::one(1)))
                throw ConfigError("step breakpoints must start at 0 and end at 1");
            for (std::size_t i = 1; i < s.breaks.size(); ++i)
                if (!(s.breaks[i - 1] < s.breaks[i]))
                    throw ConfigError("step breakpoints must be strictly increasing");
            for (double v : s.values)
                if (!std::isfinite(v)) throw ConfigError("step value is not finite");
        }
        void operator()(const IndicatorSpec&) const {} // IntervalQuery validated on construction
    };
    std::visit(Visitor{}, f.body);
}

double evaluate_plain(const IntegrandSpec& f, const UnitPoint& x) {
    struct Visitor {
        const UnitPoint& x;
        double operator()(const PolynomialSpec& s) const { return eval_polynomial(s, x.value()); }
        double operator()(const TrigSpec& s) const { return eval_trig(s, x.value()); }
        double operator()(const StepSpec& s) const { return eval_step(s, x); }
        double operator()(const IndicatorSpec& s) const {
            return s.interval.contains(x) ? 1.0 : 0.0;
        }
    };
    return std::visit(Visitor{x}, f.body);
}

double evaluate(const IntegrandSpec& f, const UnitPoint& x, const PartitionConfig* cfg) {
    if (!f.tag) return evaluate_plain(f, x);
    if (!cfg) throw ConfigError("tagged integrand needs a partition to evaluate");
    if (!is_member(x, *f.tag, *cfg)) return 0.0;
    return evaluate_plain(f, x);
}

double derivative_bound(const IntegrandSpec& f) {
    struct Visitor {
        double operator()(const PolynomialSpec& s) const {
            double b = 0.0;
            for (std::size_t i = 1; i < s.coefficients.size(); ++i)
                b += static_cast<double>(i) * std::abs(s.coefficients[i]);
            return b;
        }
        double operator()(const TrigSpec& s) const { return kTwoPi * s.frequency; }
        [[noreturn]] double operator()(const StepSpec&) const {
            throw ConfigError("step functions have no derivative bound");
        }
        [[noreturn]] double operator()(const IndicatorSpec&) const {
            throw ConfigError("indicator functions have no derivative bound");
        }
    };
    return std::visit(Visitor{}, f.body);
}

double quadrature_reference(const IntegrandSpec& f, std::uint64_t panels) {
    if (panels < 1) throw ConfigError("quadrature needs at least one panel");
    struct Visitor {
        const IntegrandSpec& f;
        std::uint64_t panels;
        double operator()(const PolynomialSpec& s) const {
            KahanSum acc;
            for (std::size_t i = 0; i < s.coefficients.size(); ++i)
                acc.add(s.coefficients[i] / static_cast<double>(i + 1));
            return acc.total();
        }
        double operator()(const TrigSpec&) const {
            return 0.0; // sin/cos of 2*pi*h*x integrate to 0 over a whole period
        }
        double operator()(const StepSpec& s) const {
            KahanSum acc;
            for (std::size_t i = 0; i < s.values.size(); ++i)
                acc.add(s.values[i] * (s.breaks[i + 1].value() - s.breaks[i].value()));
            return acc.total();
        }
        double operator()(const IndicatorSpec& s) const { return s.interval.target(); }
    };
    return std::visit(Visitor{f, panels}, f.body);
}

double midpoint_quadrature(const IntegrandSpec& f, std::uint64_t panels) {
    if (panels < 1) throw ConfigError("quadrature needs at least one panel");
    KahanSum acc;
    const bool pow2 = (panels & (panels - 1)) == 0;
    std::uint32_t bits = 0;
    if (pow2)
        while ((std::uint64_t{1} << bits) < panels) ++bits;
    if (pow2 && bits + 1 <= kMaxPrecision) {
        // Midpoints (2i+1)/2^(bits+1) are exact grid points.
        for (std::uint64_t i = 0; i < panels; ++i)
            acc.add(evaluate_plain(f, UnitPoint(2 * i + 1, bits + 1)));
    } else {
        for (std::uint64_t i = 0; i < panels; ++i)
            acc.add(eval_plain_double(f, (static_cast<double>(i) + 0.5) /
                                             static_cast<double>(panels)));
    }
    return acc.total() / static_cast<double>(panels);
}

std::pair<IntegrandSpec, IntegrandSpec> step_brackets(const IntegrandSpec& f,
                                                      std::uint32_t level) {
    if (!f.continuous())
        throw ConfigError("step brackets require a continuous integrand");
    if (level < 1 || level > 16) throw ConfigError("bracket level must be in [1, 16]");
    const std::uint64_t pieces = std::uint64_t{1} << level;
    const double width = std::ldexp(1.0, -static_cast<int>(level));
    const double slack = derivative_bound(f) * width + kBracketGuard;

    StepSpec lower, upper;
    lower.breaks.reserve(pieces + 1);
    for (std::uint64_t j = 0; j <= pieces; ++j)
        lower.breaks.emplace_back(j, level);
    upper.breaks = lower.breaks;
    lower.values.reserve(pieces);
    upper.values.reserve(pieces);
    double left = evaluate_plain(f, UnitPoint(0, level));
    for (std::uint64_t j = 0; j < pieces; ++j) {
        const double right = evaluate_plain(f, UnitPoint(j + 1, level));
        // On [a,b]: h >= max(h(a),h(b)) - L*w and h <= min(h(a),h(b)) + L*w.
        lower.values.push_back(std::max(left, right) - slack);
        upper.values.push_back(std::min(left, right) + slack);
        left = right;
    }
    IntegrandSpec f1{std::move(lower), f.tag};
    IntegrandSpec f2{std::move(upper), f.tag};
    return {std::move(f1), std::move(f2)};
}

std::vector<IntegrandSpec> builtin_continuous_family() {
    std::vector<IntegrandSpec> out;
    out.push_back({PolynomialSpec{{1.0}}, std::nullopt});           // constant 1
    out.push_back({PolynomialSpec{{0.0, 1.0}}, std::nullopt});      // x
    out.push_back({PolynomialSpec{{0.0, 0.0, 1.0}}, std::nullopt}); // x^2
    out.push_back({PolynomialSpec{{0.25, -1.0, 0.5, 0.0, 0.0, 0.0, 2.0}}, std::nullopt});
    out.push_back({TrigSpec{TrigKind::Sin, 1}, std::nullopt});
    out.push_back({TrigSpec{TrigKind::Cos, 1}, std::nullopt});
    out.push_back({TrigSpec{TrigKind::Sin, 3}, std::nullopt});
    out.push_back({TrigSpec{TrigKind::Cos, 8}, std::nullopt});
    return out;
}

std::vector<IntegrandSpec> builtin_family() {
    std::vector<IntegrandSpec> out = builtin_continuous_family();
    StepSpec quarter;
    quarter.breaks = {UnitPoint(0, 2), UnitPoint(1, 2), UnitPoint(2, 2), UnitPoint(4, 2)};
    quarter.values = {0.0, 1.0, 0.0};
    out.push_back({std::move(quarter), std::nullopt});
    StepSpec stair;
    stair.breaks = {UnitPoint(0, 3), UnitPoint(2, 3), UnitPoint(5, 3), UnitPoint(8, 3)};
    stair.values = {-1.0, 0.5, 2.0};
    out.push_back({std::move(stair), std::nullopt});
    out.push_back({IndicatorSpec{IntervalQuery(UnitPoint(1, 2), UnitPoint(3, 2))}, std::nullopt});
    out.push_back({IndicatorSpec{IntervalQuery(UnitPoint(1, 3), UnitPoint(1, 1),
                                               EndpointRule::HalfOpen)},
                   std::nullopt});
    return out;
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        if (pos == std::string::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

double parse_double(const std::string& s) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size() || !std::isfinite(v)) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("invalid number: '" + s + "'");
    }
}

std::uint64_t parse_uint(const std::string& s, const char* what) {
    try {
        std::size_t used = 0;
        const unsigned long long v = std::stoull(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ConfigError(std::string("invalid ") + what + ": '" + s + "'");
    }
}

std::string format_double(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

} // namespace

IntegrandSpec parse_integrand(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos)
        throw ConfigError("integrand '" + text + "' needs the form kind:params");
    const std::string head = text.substr(0, colon);
    const std::string rest = text.substr(colon + 1);

    if (head == "tagged") {
        const auto second = rest.find(':');
        if (second == std::string::npos)
            throw ConfigError("tagged integrand needs the form tagged:t:kind:params");
        const TagIndex t = parse_uint(rest.substr(0, second), "tag");
        return with_tag(parse_integrand(rest.substr(second + 1)), t);
    }

    IntegrandSpec spec;
    if (head == "poly") {
        PolynomialSpec s;
        for (const auto& piece : split(rest, ','))
            s.coefficients.push_back(parse_double(piece));
        spec.body = std::move(s);
    } else if (head == "sin" || head == "cos") {
        TrigSpec s;
        s.kind = (head == "sin") ? TrigKind::Sin : TrigKind::Cos;
        s.frequency = static_cast<std::uint32_t>(parse_uint(rest, "frequency"));
        spec.body = s;
    } else if (head == "step") {
        const auto parts = split(rest, '|');
        if (parts.size() != 2)
            throw ConfigError("step integrand needs the form step:breaks|values");
        StepSpec s;
        for (const auto& piece : split(parts[0], ','))
            s.breaks.push_back(parse_unit_point(piece));
        for (const auto& piece : split(parts[1], ','))
            s.values.push_back(parse_double(piece));
        spec.body = std::move(s);
    } else if (head == "indicator") {
        const auto parts = split(rest, ',');
        if (parts.size() != 2 && parts.size() != 3)
            throw ConfigError("indicator integrand needs the form indicator:c,d[,half_open]");
        EndpointRule rule = EndpointRule::Closed;
        if (parts.size() == 3) {
            if (parts[2] == "half_open")
                rule = EndpointRule::HalfOpen;
            else if (parts[2] == "closed")
                rule = EndpointRule::Closed;
            else
                throw ConfigError("unknown endpoint rule: '" + parts[2] + "'");
        }
        spec.body =
            IndicatorSpec{IntervalQuery(parse_unit_point(parts[0]), parse_unit_point(parts[1]), rule)};
    } else {
        throw ConfigError("unknown integrand kind: '" + head + "'");
    }
    validate_integrand(spec);
    return spec;
}

std::string format_integrand(const IntegrandSpec& f) {
    struct Visitor {
        std::string operator()(const PolynomialSpec& s) const {
            std::string out = "poly:";
            for (std::size_t i = 0; i < s.coefficients.size(); ++i) {
                if (i) out += ',';
                out += format_double(s.coefficients[i]);
            }
            return out;
        }
        std::string operator()(const TrigSpec& s) const {
            return (s.kind == TrigKind::Sin ? "sin:" : "cos:") + std::to_string(s.frequency);
        }
        std::string operator()(const StepSpec& s) const {
            std::string out = "step:";
            for (std::size_t i = 0; i < s.breaks.size(); ++i) {
                if (i) out += ',';
                out += s.breaks[i].exact();
            }
            out += '|';
            for (std::size_t i = 0; i < s.values.size(); ++i) {
                if (i) out += ',';
                out += format_double(s.values[i]);
            }
            return out;
        }
        std::string operator()(const IndicatorSpec& s) const {
            std::string out = "indicator:" + s.interval.lower.exact() + "," +
                              s.interval.upper.exact();
            if (s.interval.rule == EndpointRule::HalfOpen) out += ",half_open";
            return out;
        }
    };
    const std::string body = std::visit(Visitor{}, f.body);
    return f.tag ? "tagged:" + std::to_string(*f.tag) + ":" + body : body;
}

} // namespace equidist
