#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "equidist/integrand.hpp"
#include "equidist/interval.hpp"
#include "equidist/partition.hpp"
#include "equidist/sequence.hpp"

namespace equidist {

inline constexpr double kDefaultTolerance = 0.02;

/// The default interval grid: `pieces` closed dyadic intervals [j/k, (j+1)/k].
std::vector<IntervalQuery> dyadic_grid(std::uint32_t pieces = 8);

/// The default prefix schedule {100, 1000, 10000, 100000}.
std::vector<std::uint64_t> default_schedule();

/// Count of prefix elements inside the interval, with multiplicity.
std::uint64_t interval_count(const Sequence& prefix, const IntervalQuery& q, std::uint64_t n);

/// #{k <= N : x_k in [c,d]} / N.
double interval_count_ratio(const Sequence& prefix, const IntervalQuery& q, std::uint64_t n);

/// Count of prefix elements inside the interval AND in class C_t.
std::uint64_t tagged_count(const Sequence& prefix, const IntervalQuery& q, TagIndex t,
                           const PartitionConfig& cfg, std::uint64_t n);

/// #{k <= N : x_k in [c,d] and x_k in C_t} / N.
double tagged_count_ratio(const Sequence& prefix, const IntervalQuery& q, TagIndex t,
                          const PartitionConfig& cfg, std::uint64_t n);
double tagged_count_ratio(const TaggedSequence& prefix, const IntervalQuery& q, TagIndex t,
                          const PartitionConfig& cfg, std::uint64_t n);

struct CountingRow {
    IntervalQuery interval;
    std::uint64_t n = 0;
    std::uint64_t count = 0;
    double ratio = 0.0;
    double target = 0.0;
    double deviation = 0.0; // |ratio - target|
};

struct CountingReport {
    std::vector<std::uint64_t> schedule;
    std::vector<CountingRow> rows; // interval-major, schedule-minor
    double max_final_deviation = 0.0;
    std::optional<TagIndex> tag;
};

/// The deviation trajectory of a prefix over a grid of intervals and a
/// schedule of prefix lengths; tagged counting when `tag` is given.
CountingReport counting_report(const Sequence& prefix, const std::vector<IntervalQuery>& grid,
                               const std::vector<std::uint64_t>& schedule,
                               std::optional<TagIndex> tag = std::nullopt,
                               const PartitionConfig* cfg = nullptr);

struct UdVerdict {
    bool pass = false;
    double tolerance = kDefaultTolerance;
    std::optional<IntervalQuery> failing_interval; // at the final schedule point
    std::uint64_t failing_n = 0;
    std::optional<TagIndex> tag;
    CountingReport counts;
};

/// Finite-prefix uniform-distribution decision: pass iff every interval's
/// deviation at the FINAL schedule point is within tol. The full trajectory
/// is kept so non-convergence stays visible.
UdVerdict ud_verdict(const Sequence& seq, const std::vector<IntervalQuery>& grid,
                     const std::vector<std::uint64_t>& schedule, double tol,
                     std::optional<TagIndex> tag = std::nullopt,
                     const PartitionConfig* cfg = nullptr);
UdVerdict ud_verdict(const TaggedSequence& seq, const std::vector<IntervalQuery>& grid,
                     const std::vector<std::uint64_t>& schedule, double tol, TagIndex tag);

/// D*_N over the first N elements: max_i of max(i/N - x_(i), x_(i) - (i-1)/N)
/// on the sorted sample, evaluated in integer arithmetic over the common
/// denominator N*2^p and rounded once at the end.
double star_discrepancy(const Sequence& prefix, std::uint64_t n);

struct WeylRow {
    std::string label;
    double mean = 0.0;
    double reference = 0.0;
    double deviation = 0.0;
};

struct WeylReport {
    std::vector<WeylRow> rows;
    double tolerance = kDefaultTolerance;
    double max_deviation = 0.0;
    bool pass = false;
    TagIndex tag = 0;
};

/// For each continuous h: empirical mean of h(x_n)*[x_n in C_t] against the
/// reference integral of h; pass iff every deviation is within tol.
WeylReport tagged_weyl_check(const TaggedSequence& seq, TagIndex t,
                             const std::vector<IntegrandSpec>& integrands, std::uint64_t n,
                             double tol, const PartitionConfig& cfg);

} // namespace equidist
