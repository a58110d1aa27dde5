#include "equidist/ud_tests.hpp"

#include <algorithm>
#include <cmath>

#include "equidist/errors.hpp"
#include "equidist/kahan.hpp"

namespace equidist {

namespace {

void require_prefix_window(std::uint64_t n, std::size_t length) {
    if (n == 0) throw ConfigError("prefix length must be positive");
    if (n > length)
        throw ConfigError("prefix length " + std::to_string(n) + " exceeds materialized length " +
                          std::to_string(length));
}

void require_schedule(const std::vector<std::uint64_t>& schedule, std::size_t length) {
    if (schedule.empty()) throw ConfigError("schedule must be nonempty");
    for (std::size_t i = 0; i < schedule.size(); ++i) {
        if (schedule[i] == 0) throw ConfigError("schedule entries must be positive");
        if (i > 0 && schedule[i] <= schedule[i - 1])
            throw ConfigError("schedule must be strictly increasing");
    }
    if (schedule.back() > length)
        throw ConfigError("schedule reaches " + std::to_string(schedule.back()) +
                          " but only " + std::to_string(length) + " elements are materialized");
}

} // namespace

std::vector<IntervalQuery> dyadic_grid(std::uint32_t pieces) {
    if (pieces < 2 || (pieces & (pieces - 1)) != 0)
        throw ConfigError("grid piece count must be a power of two, at least 2");
    std::uint32_t level = 0;
    while ((std::uint32_t{1} << level) < pieces) ++level;
    std::vector<IntervalQuery> grid;
    grid.reserve(pieces);
    for (std::uint32_t j = 0; j < pieces; ++j)
        grid.emplace_back(UnitPoint(j, level), UnitPoint(j + 1, level));
    return grid;
}

std::vector<std::uint64_t> default_schedule() { return {100, 1000, 10000, 100000}; }

std::uint64_t interval_count(const Sequence& prefix, const IntervalQuery& q, std::uint64_t n) {
    require_prefix_window(n, prefix.size());
    std::uint64_t count = 0;
    for (std::uint64_t i = 0; i < n; ++i)
        if (q.contains(prefix.at(i))) ++count;
    return count;
}

double interval_count_ratio(const Sequence& prefix, const IntervalQuery& q, std::uint64_t n) {
    return static_cast<double>(interval_count(prefix, q, n)) / static_cast<double>(n);
}

std::uint64_t tagged_count(const Sequence& prefix, const IntervalQuery& q, TagIndex t,
                           const PartitionConfig& cfg, std::uint64_t n) {
    require_prefix_window(n, prefix.size());
    require_valid_tag(t, cfg);
    std::uint64_t count = 0;
    for (std::uint64_t i = 0; i < n; ++i) {
        const UnitPoint x = prefix.at(i);
        if (q.contains(x) && is_member(x, t, cfg)) ++count;
    }
    return count;
}

double tagged_count_ratio(const Sequence& prefix, const IntervalQuery& q, TagIndex t,
                          const PartitionConfig& cfg, std::uint64_t n) {
    return static_cast<double>(tagged_count(prefix, q, t, cfg, n)) / static_cast<double>(n);
}

double tagged_count_ratio(const TaggedSequence& prefix, const IntervalQuery& q, TagIndex t,
                          const PartitionConfig& cfg, std::uint64_t n) {
    return tagged_count_ratio(prefix.base(), q, t, cfg, n);
}

CountingReport counting_report(const Sequence& prefix, const std::vector<IntervalQuery>& grid,
                               const std::vector<std::uint64_t>& schedule,
                               std::optional<TagIndex> tag, const PartitionConfig* cfg) {
    if (grid.empty()) throw ConfigError("interval grid must be nonempty");
    require_schedule(schedule, prefix.size());
    if (tag && !cfg) throw ConfigError("tagged counting needs a partition");
    if (tag) require_valid_tag(*tag, *cfg);

    CountingReport report;
    report.schedule = schedule;
    report.tag = tag;
    report.rows.reserve(grid.size() * schedule.size());
    for (const IntervalQuery& q : grid) {
        // One pass per interval; snapshot the running count at schedule points.
        std::uint64_t count = 0;
        std::size_t next = 0;
        for (std::uint64_t i = 0; i < schedule.back(); ++i) {
            const UnitPoint x = prefix.at(i);
            if (q.contains(x) && (!tag || is_member(x, *tag, *cfg))) ++count;
            if (i + 1 == schedule[next]) {
                CountingRow row;
                row.interval = q;
                row.n = schedule[next];
                row.count = count;
                row.ratio = static_cast<double>(count) / static_cast<double>(row.n);
                row.target = q.target();
                row.deviation = std::abs(row.ratio - row.target);
                report.rows.push_back(row);
                ++next;
            }
        }
        report.max_final_deviation = std::max(report.max_final_deviation,
                                              report.rows.back().deviation);
    }
    return report;
}

UdVerdict ud_verdict(const Sequence& seq, const std::vector<IntervalQuery>& grid,
                     const std::vector<std::uint64_t>& schedule, double tol,
                     std::optional<TagIndex> tag, const PartitionConfig* cfg) {
    if (!(tol > 0.0)) throw ConfigError("tolerance must be positive");
    UdVerdict verdict;
    verdict.tolerance = tol;
    verdict.tag = tag;
    verdict.counts = counting_report(seq, grid, schedule, tag, cfg);
    verdict.pass = true;
    // Rows are interval-major: the final schedule point of interval g sits at
    // index g*|schedule| + (|schedule|-1).
    const std::size_t stride = schedule.size();
    for (std::size_t g = 0; g < grid.size(); ++g) {
        const CountingRow& last = verdict.counts.rows[g * stride + stride - 1];
        if (last.deviation > tol) {
            verdict.pass = false;
            verdict.failing_interval = last.interval;
            verdict.failing_n = last.n;
            break;
        }
    }
    return verdict;
}

UdVerdict ud_verdict(const TaggedSequence& seq, const std::vector<IntervalQuery>& grid,
                     const std::vector<std::uint64_t>& schedule, double tol, TagIndex tag) {
    const PartitionConfig cfg = seq.partition();
    return ud_verdict(seq.base(), grid, schedule, tol, tag, &cfg);
}

double star_discrepancy(const Sequence& prefix, std::uint64_t n) {
    require_prefix_window(n, prefix.size());
    std::vector<std::uint64_t> ks(prefix.numerators().begin(),
                                  prefix.numerators().begin() + static_cast<std::ptrdiff_t>(n));
    std::sort(ks.begin(), ks.end());
    const std::uint32_t p = prefix.precision();
    // All candidate deviations share the denominator N*2^p:
    //   i/N - k_i/2^p   has numerator i*2^p - k_i*N
    //   k_i/2^p - (i-1)/N has numerator k_i*N - (i-1)*2^p
    const __int128 pow_p = __int128{1} << p;
    __int128 best = 0;
    for (std::uint64_t i = 1; i <= n; ++i) {
        const __int128 kn = static_cast<__int128>(ks[i - 1]) * static_cast<__int128>(n);
        best = std::max(best, static_cast<__int128>(i) * pow_p - kn);
        best = std::max(best, kn - static_cast<__int128>(i - 1) * pow_p);
    }
    return static_cast<double>(best) /
           (static_cast<double>(n) * std::ldexp(1.0, static_cast<int>(p)));
}

WeylReport tagged_weyl_check(const TaggedSequence& seq, TagIndex t,
                             const std::vector<IntegrandSpec>& integrands, std::uint64_t n,
                             double tol, const PartitionConfig& cfg) {
    require_prefix_window(n, seq.size());
    require_valid_tag(t, cfg);
    if (!(tol > 0.0)) throw ConfigError("tolerance must be positive");
    if (integrands.empty()) throw ConfigError("at least one integrand is required");
    for (const IntegrandSpec& h : integrands)
        if (!h.continuous())
            throw ConfigError("the Weyl-type check accepts continuous integrands only, got " +
                              h.kind());

    WeylReport report;
    report.tolerance = tol;
    report.tag = t;
    report.pass = true;
    for (const IntegrandSpec& h : integrands) {
        const IntegrandSpec tagged = with_tag(h, t);
        KahanSum acc;
        for (std::uint64_t i = 0; i < n; ++i)
            acc.add(evaluate(tagged, seq.at(i), &cfg));
        WeylRow row;
        row.label = h.label();
        row.mean = acc.total() / static_cast<double>(n);
        row.reference = quadrature_reference(h);
        row.deviation = std::abs(row.mean - row.reference);
        report.max_deviation = std::max(report.max_deviation, row.deviation);
        if (row.deviation > tol) report.pass = false;
        report.rows.push_back(std::move(row));
    }
    return report;
}

} // namespace equidist
