#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "equidist/integrand.hpp"
#include "equidist/interval.hpp"
#include "equidist/partition.hpp"
#include "equidist/rng.hpp"

namespace equidist {

inline constexpr double kDefaultDelta = 0.05;

struct ExperimentConfig {
    std::uint64_t trials = 200;  // M
    std::uint64_t length = 10000; // N per trial
    double epsilon = 0.02;       // per-trial tolerance
    TagIndex tag = 0;
    PartitionConfig partition{4, 32};
    std::optional<IntegrandSpec> integrand; // the mean-convergence experiment
    std::vector<IntervalQuery> grid;        // the distribution experiment (empty = dyadic 8)
    std::uint64_t master_seed = 0;
    double delta = kDefaultDelta; // overall pass needs fraction >= 1 - delta
    unsigned threads = 1;         // 0 = hardware concurrency
};

struct TrialRow {
    std::uint64_t trial = 0; // 1-based
    std::uint64_t seed = 0;
    bool pass = false;
    double deviation = 0.0;
};

struct ExperimentReport {
    std::string kind; // "slln" | "hlawka"
    ExperimentConfig config;
    std::vector<TrialRow> rows;
    std::uint64_t passed = 0;
    double pass_fraction = 0.0;
    bool pass = false; // pass_fraction >= 1 - delta
};

/// Seed of trial i (0-based), derived from the master seed through the
/// counter-addressable stream so trials are independently re-runnable.
inline std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t trial_index) {
    return splitmix64_at(master_seed, trial_index);
}

/// M independent trials: draw a tagged i.i.d. sample, pass iff the tagged
/// empirical mean of the configured integrand is within epsilon of the
/// reference integral.
ExperimentReport slln_experiment(const ExperimentConfig& cfg);

/// M independent trials: draw a tagged i.i.d. sample, pass iff the tagged
/// distribution verdict over the interval grid holds at tolerance epsilon.
ExperimentReport hlawka_experiment(const ExperimentConfig& cfg);

} // namespace equidist
