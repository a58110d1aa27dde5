#include "equidist/integrate.hpp"

#include <cmath>

#include "equidist/errors.hpp"
#include "equidist/kahan.hpp"

namespace equidist {

namespace {

void require_window(std::uint64_t n, std::size_t length) {
    if (n == 0) throw ConfigError("prefix length must be positive");
    if (n > length)
        throw ConfigError("prefix length " + std::to_string(n) + " exceeds materialized length " +
                          std::to_string(length));
}

} // namespace

IntegrateResult qmc_integrate(const IntegrandSpec& f, const Sequence& seq, std::uint64_t n) {
    require_window(n, seq.size());
    validate_integrand(f);
    if (f.tag)
        throw ConfigError("qmc_integrate takes an untagged integrand; use tagged_integrate");
    KahanSum acc;
    for (std::uint64_t i = 0; i < n; ++i)
        acc.add(evaluate_plain(f, seq.at(i)));
    IntegrateResult out;
    out.integrand = f.label();
    out.n = n;
    out.estimate = acc.total() / static_cast<double>(n);
    out.reference = quadrature_reference(f);
    out.deviation = std::abs(out.estimate - out.reference);
    return out;
}

IntegrateResult tagged_integrate(const IntegrandSpec& f, const TaggedSequence& seq,
                                 std::uint64_t n, const PartitionConfig& cfg) {
    require_window(n, seq.size());
    validate_integrand(f);
    if (!f.tag) throw ConfigError("tagged_integrate needs an integrand with a tag");
    require_valid_tag(*f.tag, cfg);
    KahanSum acc;
    for (std::uint64_t i = 0; i < n; ++i)
        acc.add(evaluate(f, seq.at(i), &cfg));
    IntegrateResult out;
    out.integrand = f.label();
    out.n = n;
    out.estimate = acc.total() / static_cast<double>(n);
    out.reference = quadrature_reference(f); // tag stripped by design
    out.deviation = std::abs(out.estimate - out.reference);
    return out;
}

} // namespace equidist
