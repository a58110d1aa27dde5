#pragma once

#include <cstdint>
#include <string>

#include "equidist/integrand.hpp"
#include "equidist/sequence.hpp"

namespace equidist {

struct IntegrateResult {
    std::string integrand;  // canonical label
    std::uint64_t n = 0;
    double estimate = 0.0;  // (1/N) sum of f(x_k)
    double reference = 0.0; // the plain integral of the underlying h
    double deviation = 0.0; // |estimate - reference|
};

/// Quasi-Monte-Carlo mean (1/N) sum f(x_n) against the reference integral.
/// f must be untagged (there is no partition here to resolve a tag).
IntegrateResult qmc_integrate(const IntegrandSpec& f, const Sequence& seq, std::uint64_t n);

/// Empirical mean of the tagged form h(x)*[x in C_t] over a tagged sequence;
/// the reference stays the plain integral of h (the tagged measure agrees
/// with length on intervals and concentrates on C_t).
IntegrateResult tagged_integrate(const IntegrandSpec& f, const TaggedSequence& seq,
                                 std::uint64_t n, const PartitionConfig& cfg);

} // namespace equidist
