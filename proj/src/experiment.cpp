#include "equidist/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "equidist/errors.hpp"
#include "equidist/integrate.hpp"
#include "equidist/sequence.hpp"
#include "equidist/ud_tests.hpp"

namespace equidist {

namespace {

void validate_common(const ExperimentConfig& cfg) {
    if (cfg.trials < 1) throw ConfigError("experiment needs at least one trial");
    if (cfg.length < 1) throw ConfigError("experiment needs positive trial length");
    if (!(cfg.epsilon > 0.0)) throw ConfigError("epsilon must be positive");
    if (!(cfg.delta > 0.0 && cfg.delta < 1.0)) throw ConfigError("delta must lie in (0,1)");
    require_valid_tag(cfg.tag, cfg.partition);
}

unsigned resolve_threads(unsigned requested, std::uint64_t trials) {
    unsigned t = requested == 0 ? std::thread::hardware_concurrency() : requested;
    if (t == 0) t = 1;
    return static_cast<unsigned>(std::min<std::uint64_t>(t, trials));
}

// Runs `trial(i)` for i in [0, trials) across workers; each worker writes
// only its own slots, so the report is identical to a sequential run.
template <typename Trial>
std::vector<TrialRow> run_trials(const ExperimentConfig& cfg, Trial&& trial) {
    std::vector<TrialRow> rows(cfg.trials);
    const unsigned workers = resolve_threads(cfg.threads, cfg.trials);
    auto body = [&](unsigned w) {
        for (std::uint64_t i = w; i < cfg.trials; i += workers) {
            TrialRow row;
            row.trial = i + 1;
            row.seed = trial_seed(cfg.master_seed, i);
            trial(row);
            rows[i] = row;
        }
    };
    if (workers == 1) {
        body(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back(body, w);
        for (auto& th : pool)
            th.join();
    }
    return rows;
}

ExperimentReport finish(std::string kind, const ExperimentConfig& cfg,
                        std::vector<TrialRow> rows) {
    ExperimentReport report;
    report.kind = std::move(kind);
    report.config = cfg;
    report.rows = std::move(rows);
    for (const TrialRow& row : report.rows)
        if (row.pass) ++report.passed;
    report.pass_fraction =
        static_cast<double>(report.passed) / static_cast<double>(report.rows.size());
    report.pass = report.pass_fraction >= 1.0 - cfg.delta;
    return report;
}

} // namespace

ExperimentReport slln_experiment(const ExperimentConfig& cfg) {
    validate_common(cfg);
    if (!cfg.integrand) throw ConfigError("the mean-convergence experiment needs an integrand");
    validate_integrand(*cfg.integrand);
    const IntegrandSpec tagged = with_tag(without_tag(*cfg.integrand), cfg.tag);

    auto rows = run_trials(cfg, [&](TrialRow& row) {
        const TaggedSequence y = sample_tagged(row.seed, cfg.tag, cfg.length, cfg.partition);
        const IntegrateResult r = tagged_integrate(tagged, y, cfg.length, cfg.partition);
        row.deviation = r.deviation;
        row.pass = r.deviation <= cfg.epsilon;
    });
    return finish("slln", cfg, std::move(rows));
}

ExperimentReport hlawka_experiment(const ExperimentConfig& cfg) {
    validate_common(cfg);
    const std::vector<IntervalQuery> grid = cfg.grid.empty() ? dyadic_grid() : cfg.grid;
    const std::vector<std::uint64_t> schedule{cfg.length};

    auto rows = run_trials(cfg, [&](TrialRow& row) {
        const TaggedSequence y = sample_tagged(row.seed, cfg.tag, cfg.length, cfg.partition);
        const UdVerdict v = ud_verdict(y, grid, schedule, cfg.epsilon, cfg.tag);
        row.deviation = v.counts.max_final_deviation;
        row.pass = v.pass;
    });
    ExperimentReport report = finish("hlawka", cfg, std::move(rows));
    report.config.grid = grid; // echo the grid actually used
    return report;
}

} // namespace equidist
