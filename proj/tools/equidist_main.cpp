// equidist: generate sequences on the unit grid, run distribution tests and
// tagged-measure experiments, and emit reproducible JSON reports.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "equidist/alpha.hpp"
#include "equidist/errors.hpp"
#include "equidist/experiment.hpp"
#include "equidist/integrate.hpp"
#include "equidist/sequence.hpp"
#include "equidist/serialize.hpp"
#include "equidist/ud_tests.hpp"

namespace {

using namespace equidist;

constexpr int kExitPass = 0;
constexpr int kExitTestFailure = 1;
constexpr int kExitConfigError = 2;

unsigned env_threads() {
    const char* raw = std::getenv("EQUIDIST_THREADS");
    if (!raw || !*raw) return 1;
    try {
        std::size_t used = 0;
        const unsigned long v = std::stoul(raw, &used);
        if (used != std::string(raw).size()) throw std::invalid_argument(raw);
        return static_cast<unsigned>(v);
    } catch (const std::exception&) {
        throw ConfigError(std::string("EQUIDIST_THREADS must be a number, got '") + raw + "'");
    }
}

void emit(const Json& doc, const std::string& out_path, const std::string& csv_path) {
    if (out_path.empty())
        std::cout << doc.dump(2) << '\n';
    else
        write_json_file(out_path, doc);
    if (!csv_path.empty()) write_text_file(csv_path, rows_csv(doc));
}

// ----- shared pipeline steps, reused verbatim by `rerun` ---------------------

Json run_generate(const SequenceDescriptor& desc, const std::string& subcommand) {
    Json config;
    config["descriptor"] = descriptor_json(desc);
    Json manifest = make_manifest(subcommand, config);
    if (desc.tagged_kind())
        return sequence_document(materialize_tagged(desc), std::move(manifest));
    return sequence_document(materialize(desc), std::move(manifest));
}

struct TestArgs {
    SequenceDescriptor descriptor;
    std::vector<IntervalQuery> grid;
    std::vector<std::uint64_t> schedule;
    double tolerance = kDefaultTolerance;
    std::optional<TagIndex> tag;
    std::optional<PartitionConfig> partition;
};

Json test_config_json(const TestArgs& a) {
    Json config;
    config["descriptor"] = descriptor_json(a.descriptor);
    config["grid"] = grid_json(a.grid);
    config["schedule"] = a.schedule;
    config["tolerance"] = a.tolerance;
    if (a.tag) config["tag"] = *a.tag;
    if (a.partition) config["partition"] = partition_json(*a.partition);
    return config;
}

TestArgs test_args_from_config(const Json& config) {
    TestArgs a;
    a.descriptor = descriptor_from_json(config.at("descriptor"));
    a.grid = grid_from_json(config.at("grid"));
    a.schedule = config.at("schedule").get<std::vector<std::uint64_t>>();
    a.tolerance = config.at("tolerance").get<double>();
    if (config.contains("tag")) a.tag = config["tag"].get<TagIndex>();
    if (config.contains("partition")) a.partition = partition_from_json(config["partition"]);
    return a;
}

std::pair<Json, bool> run_test(const TestArgs& a) {
    const Sequence seq = materialize(a.descriptor);
    const PartitionConfig* cfg = a.partition ? &*a.partition : nullptr;
    if (a.tag && !cfg) throw ConfigError("tagged testing needs a partition (--m)");
    const UdVerdict verdict = ud_verdict(seq, a.grid, a.schedule, a.tolerance, a.tag, cfg);
    Json doc = verdict_document(verdict, make_manifest("test", test_config_json(a)));
    return {std::move(doc), verdict.pass};
}

struct DiscrepancyArgs {
    SequenceDescriptor descriptor;
    std::vector<std::uint64_t> schedule;
};

Json run_discrepancy(const DiscrepancyArgs& a) {
    const Sequence seq = materialize(a.descriptor);
    std::vector<std::pair<std::uint64_t, double>> values;
    for (std::uint64_t n : a.schedule)
        values.emplace_back(n, star_discrepancy(seq, n));
    Json config;
    config["descriptor"] = descriptor_json(a.descriptor);
    config["schedule"] = a.schedule;
    return discrepancy_document(values, make_manifest("discrepancy", config));
}

struct WeylArgs {
    SequenceDescriptor descriptor;
    TagIndex tag = 0;
    std::uint64_t length = 0; // 0 = full descriptor length
    double tolerance = kDefaultTolerance;
    std::vector<std::string> integrands; // empty = built-in continuous family
};

std::pair<Json, bool> run_weyl(const WeylArgs& a) {
    if (!a.descriptor.tagged_kind())
        throw ConfigError("the Weyl-type check needs a tagged sequence (lift/spoiler/sampled)");
    const TaggedSequence seq = materialize_tagged(a.descriptor);
    std::vector<IntegrandSpec> hs;
    if (a.integrands.empty()) {
        hs = builtin_continuous_family();
    } else {
        for (const auto& text : a.integrands)
            hs.push_back(parse_integrand(text));
    }
    const std::uint64_t n = a.length == 0 ? seq.size() : a.length;
    const WeylReport report = tagged_weyl_check(seq, a.tag, hs, n, a.tolerance, seq.partition());
    Json config;
    config["descriptor"] = descriptor_json(a.descriptor);
    config["tag"] = a.tag;
    config["N"] = n;
    config["tolerance"] = a.tolerance;
    Json names = Json::array();
    for (const auto& h : hs)
        names.push_back(h.label());
    config["integrands"] = std::move(names);
    Json doc = weyl_document(report, make_manifest("weyl", config));
    return {std::move(doc), report.pass};
}

struct IntegrateArgs {
    SequenceDescriptor descriptor;
    std::string integrand;
    std::uint64_t length = 0; // 0 = full descriptor length
};

Json run_integrate(const IntegrateArgs& a) {
    const IntegrandSpec f = parse_integrand(a.integrand);
    Json config;
    config["descriptor"] = descriptor_json(a.descriptor);
    config["integrand"] = f.label();
    IntegrateResult result;
    if (f.tag) {
        if (!a.descriptor.tagged_kind())
            throw ConfigError("a tagged integrand needs a tagged sequence");
        const TaggedSequence seq = materialize_tagged(a.descriptor);
        const std::uint64_t n = a.length == 0 ? seq.size() : a.length;
        config["N"] = n;
        result = tagged_integrate(f, seq, n, seq.partition());
    } else {
        const Sequence seq = materialize(a.descriptor);
        const std::uint64_t n = a.length == 0 ? seq.size() : a.length;
        config["N"] = n;
        result = qmc_integrate(f, seq, n);
    }
    return integrate_document(result, make_manifest("integrate", config));
}

std::pair<Json, bool> run_experiment(const std::string& which, const ExperimentConfig& cfg) {
    const ExperimentReport report =
        which == "slln" ? slln_experiment(cfg) : hlawka_experiment(cfg);
    Json config = experiment_config_json(report.config);
    config["experiment"] = which;
    Json doc = experiment_document(report, make_manifest("experiment", config));
    return {std::move(doc), report.pass};
}

// ----- rerun: re-execute the pipeline recorded in a report's manifest --------

int run_from_manifest(const Json& manifest, const std::string& out_path,
                      const std::string& csv_path) {
    const std::string sub = manifest.at("subcommand").get<std::string>();
    const Json& config = manifest.at("config");
    if (sub == "generate" || sub == "lift" || sub == "spoil") {
        emit(run_generate(descriptor_from_json(config.at("descriptor")), sub), out_path, csv_path);
        return kExitPass;
    }
    if (sub == "test") {
        auto [doc, pass] = run_test(test_args_from_config(config));
        emit(doc, out_path, csv_path);
        return pass ? kExitPass : kExitTestFailure;
    }
    if (sub == "discrepancy") {
        DiscrepancyArgs a;
        a.descriptor = descriptor_from_json(config.at("descriptor"));
        a.schedule = config.at("schedule").get<std::vector<std::uint64_t>>();
        emit(run_discrepancy(a), out_path, csv_path);
        return kExitPass;
    }
    if (sub == "weyl") {
        WeylArgs a;
        a.descriptor = descriptor_from_json(config.at("descriptor"));
        a.tag = config.at("tag").get<TagIndex>();
        a.length = config.at("N").get<std::uint64_t>();
        a.tolerance = config.at("tolerance").get<double>();
        for (const auto& name : config.at("integrands"))
            a.integrands.push_back(name.get<std::string>());
        auto [doc, pass] = run_weyl(a);
        emit(doc, out_path, csv_path);
        return pass ? kExitPass : kExitTestFailure;
    }
    if (sub == "integrate") {
        IntegrateArgs a;
        a.descriptor = descriptor_from_json(config.at("descriptor"));
        a.integrand = config.at("integrand").get<std::string>();
        a.length = config.at("N").get<std::uint64_t>();
        emit(run_integrate(a), out_path, csv_path);
        return kExitPass;
    }
    if (sub == "experiment") {
        ExperimentConfig cfg = experiment_config_from_json(config);
        cfg.threads = env_threads();
        auto [doc, pass] = run_experiment(config.at("experiment").get<std::string>(), cfg);
        emit(doc, out_path, csv_path);
        return pass ? kExitPass : kExitTestFailure;
    }
    throw ConfigError("manifest has unknown subcommand: '" + sub + "'");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"uniform-distribution sequences, tagged partitions, and QMC experiments"};
    app.require_subcommand(1);

    // ---- generate -----------------------------------------------------------
    auto* gen = app.add_subcommand("generate", "materialize a sequence prefix");
    std::string gen_kind = "kronecker", gen_alpha = "sqrt2";
    std::uint64_t gen_base = 2, gen_seed = 0, gen_m = 4, gen_n = 1000;
    TagIndex gen_tag = 0;
    std::uint32_t gen_p = 32;
    std::string gen_out, gen_csv;
    gen->add_option("--kind", gen_kind, "kronecker | van_der_corput | iid_uniform | sampled")
        ->check(CLI::IsMember({"kronecker", "van_der_corput", "iid_uniform", "sampled"}));
    gen->add_option("--alpha", gen_alpha, "rotation number: sqrt2|sqrt3|golden|e|pi or decimal");
    gen->add_option("--base", gen_base, "radical-inverse base");
    gen->add_option("--seed", gen_seed, "seed for random kinds");
    gen->add_option("--tag", gen_tag, "class index for sampled");
    gen->add_option("--m", gen_m, "partition classes for sampled");
    gen->add_option("--n", gen_n, "prefix length");
    gen->add_option("--p", gen_p, "grid precision in bits");
    gen->add_option("--out", gen_out, "output JSON path (stdout if omitted)");
    gen->add_option("--csv", gen_csv, "also write rows as CSV");

    // ---- lift / spoil -------------------------------------------------------
    auto* lift = app.add_subcommand("lift", "re-place a sequence into one tag class");
    std::string lift_seq;
    TagIndex lift_tag = 0;
    std::uint64_t lift_m = 4;
    std::uint32_t lift_p = 0;
    std::string lift_out, lift_csv;
    lift->add_option("--seq", lift_seq, "input sequence JSON")->required();
    lift->add_option("--tag", lift_tag, "target class index");
    lift->add_option("--m", lift_m, "partition classes");
    lift->add_option("--p", lift_p, "partition precision (default: sequence precision)");
    lift->add_option("--out", lift_out, "output JSON path");
    lift->add_option("--csv", lift_csv, "also write rows as CSV");

    auto* spoil = app.add_subcommand("spoil", "re-place a sequence with pairwise-distinct tags");
    std::string spoil_seq;
    std::uint64_t spoil_m = 0;
    std::uint32_t spoil_p = 0;
    std::string spoil_out, spoil_csv;
    spoil->add_option("--seq", spoil_seq, "input sequence JSON")->required();
    spoil->add_option("--m", spoil_m, "partition classes (default: sequence length)");
    spoil->add_option("--p", spoil_p, "partition precision (default: sequence precision)");
    spoil->add_option("--out", spoil_out, "output JSON path");
    spoil->add_option("--csv", spoil_csv, "also write rows as CSV");

    // ---- test ---------------------------------------------------------------
    auto* test = app.add_subcommand("test", "distribution verdict over an interval grid");
    std::string test_seq, test_grid = "dyadic8", test_schedule;
    double test_tol = kDefaultTolerance;
    std::int64_t test_tag = -1;
    std::uint64_t test_m = 0;
    std::string test_out, test_csv;
    test->add_option("--seq", test_seq, "input sequence JSON")->required();
    test->add_option("--grid", test_grid, "dyadicK or c,d;c,d;... (default dyadic8)");
    test->add_option("--schedule", test_schedule, "prefix lengths (default 100,...,10^5 clipped)");
    test->add_option("--tol", test_tol, "tolerance at the final schedule point");
    test->add_option("--tag", test_tag, "tagged counting against this class");
    test->add_option("--m", test_m, "partition classes for --tag (default: from descriptor)");
    test->add_option("--out", test_out, "output JSON path");
    test->add_option("--csv", test_csv, "also write rows as CSV");

    // ---- discrepancy --------------------------------------------------------
    auto* disc = app.add_subcommand("discrepancy", "star discrepancy at schedule points");
    std::string disc_seq, disc_schedule, disc_out, disc_csv;
    disc->add_option("--seq", disc_seq, "input sequence JSON")->required();
    disc->add_option("--schedule", disc_schedule, "prefix lengths (default: full length)");
    disc->add_option("--out", disc_out, "output JSON path");
    disc->add_option("--csv", disc_csv, "also write rows as CSV");

    // ---- weyl ---------------------------------------------------------------
    auto* weyl = app.add_subcommand("weyl", "tagged empirical means vs reference integrals");
    std::string weyl_seq;
    TagIndex weyl_tag = 0;
    std::uint64_t weyl_n = 0;
    double weyl_tol = kDefaultTolerance;
    std::vector<std::string> weyl_fs;
    std::string weyl_out, weyl_csv;
    weyl->add_option("--seq", weyl_seq, "input tagged sequence JSON")->required();
    weyl->add_option("--tag", weyl_tag, "class index to test");
    weyl->add_option("--n", weyl_n, "prefix length (default: full)");
    weyl->add_option("--tol", weyl_tol, "per-integrand tolerance");
    weyl->add_option("--f", weyl_fs, "integrand spec (repeatable; default: built-in family)");
    weyl->add_option("--out", weyl_out, "output JSON path");
    weyl->add_option("--csv", weyl_csv, "also write rows as CSV");

    // ---- integrate ----------------------------------------------------------
    auto* integ = app.add_subcommand("integrate", "QMC mean of an integrand over a sequence");
    std::string integ_seq, integ_f = "poly:0,0,1";
    std::uint64_t integ_n = 0;
    std::string integ_out, integ_csv;
    integ->add_option("--seq", integ_seq, "input sequence JSON")->required();
    integ->add_option("--f", integ_f, "integrand spec (tagged:t:... for tagged integration)");
    integ->add_option("--n", integ_n, "prefix length (default: full)");
    integ->add_option("--out", integ_out, "output JSON path");
    integ->add_option("--csv", integ_csv, "also write rows as CSV");

    // ---- experiment ---------------------------------------------------------
    auto* exp = app.add_subcommand("experiment", "seeded multi-trial experiments");
    exp->require_subcommand(1);
    std::uint64_t exp_trials = 200, exp_n = 10000, exp_seed = 0, exp_m = 4;
    double exp_eps = 0.02, exp_delta = kDefaultDelta;
    TagIndex exp_tag = 0;
    std::uint32_t exp_p = 32;
    std::string exp_out, exp_csv;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--trials", exp_trials, "number of trials M");
        sub->add_option("--n", exp_n, "sample length N per trial");
        sub->add_option("--eps", exp_eps, "per-trial tolerance");
        sub->add_option("--delta", exp_delta, "overall pass needs fraction >= 1-delta");
        sub->add_option("--tag", exp_tag, "class index");
        sub->add_option("--m", exp_m, "partition classes");
        sub->add_option("--p", exp_p, "partition precision");
        sub->add_option("--seed", exp_seed, "master seed");
        sub->add_option("--out", exp_out, "output JSON path");
        sub->add_option("--csv", exp_csv, "also write rows as CSV");
    };
    auto* slln = exp->add_subcommand("slln", "tagged-mean convergence trials");
    std::string slln_f = "poly:0,1";
    add_common(slln);
    slln->add_option("--f", slln_f, "integrand spec (tag is attached automatically)");
    auto* hlawka = exp->add_subcommand("hlawka", "tagged-distribution verdict trials");
    std::string hlawka_grid = "dyadic8";
    add_common(hlawka);
    hlawka->add_option("--grid", hlawka_grid, "interval grid for the verdict");

    // ---- rerun --------------------------------------------------------------
    auto* rerun = app.add_subcommand("rerun", "re-execute the manifest embedded in a report");
    std::string rerun_report, rerun_out, rerun_csv;
    rerun->add_option("--report", rerun_report, "report JSON with an embedded manifest")
        ->required();
    rerun->add_option("--out", rerun_out, "output JSON path");
    rerun->add_option("--csv", rerun_csv, "also write rows as CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfigError;
    }

    try {
        if (gen->parsed()) {
            SequenceDescriptor desc;
            desc.length = gen_n;
            desc.precision = gen_p;
            if (gen_kind == "kronecker")
                desc.params = KroneckerParams{parse_alpha(gen_alpha)};
            else if (gen_kind == "van_der_corput")
                desc.params = VanDerCorputParams{gen_base};
            else if (gen_kind == "iid_uniform")
                desc.params = IidUniformParams{gen_seed};
            else
                desc.params = SampledParams{gen_seed, gen_tag, PartitionConfig(gen_m, gen_p)};
            emit(run_generate(desc, "generate"), gen_out, gen_csv);
            return kExitPass;
        }
        if (lift->parsed()) {
            const SequenceDescriptor base =
                descriptor_from_document(read_json_file(lift_seq));
            const std::uint32_t p = lift_p == 0 ? base.precision : lift_p;
            SequenceDescriptor desc;
            desc.length = base.length;
            desc.precision = p;
            desc.params = LiftParams{lift_tag, PartitionConfig(lift_m, p),
                                     std::make_shared<const SequenceDescriptor>(base)};
            emit(run_generate(desc, "lift"), lift_out, lift_csv);
            return kExitPass;
        }
        if (spoil->parsed()) {
            const SequenceDescriptor base =
                descriptor_from_document(read_json_file(spoil_seq));
            const std::uint32_t p = spoil_p == 0 ? base.precision : spoil_p;
            const std::uint64_t m = spoil_m == 0 ? base.length : spoil_m;
            SequenceDescriptor desc;
            desc.length = base.length;
            desc.precision = p;
            desc.params = SpoilerParams{PartitionConfig(m, p),
                                        std::make_shared<const SequenceDescriptor>(base)};
            emit(run_generate(desc, "spoil"), spoil_out, spoil_csv);
            return kExitPass;
        }
        if (test->parsed()) {
            const Json doc = read_json_file(test_seq);
            TestArgs a;
            a.descriptor = descriptor_from_document(doc);
            a.grid = parse_grid(test_grid);
            a.tolerance = test_tol;
            if (test_schedule.empty()) {
                for (std::uint64_t n : default_schedule())
                    if (n <= a.descriptor.length) a.schedule.push_back(n);
                if (a.schedule.empty()) a.schedule.push_back(a.descriptor.length);
            } else {
                a.schedule = parse_schedule(test_schedule);
            }
            if (test_tag >= 0) {
                a.tag = static_cast<TagIndex>(test_tag);
                if (test_m != 0) {
                    a.partition = PartitionConfig(test_m, a.descriptor.precision);
                } else if (a.descriptor.tagged_kind()) {
                    a.partition = materialize_tagged(a.descriptor).partition();
                } else {
                    throw ConfigError("tagged testing needs --m (or a tagged sequence)");
                }
            }
            auto [out_doc, pass] = run_test(a);
            emit(out_doc, test_out, test_csv);
            return pass ? kExitPass : kExitTestFailure;
        }
        if (disc->parsed()) {
            DiscrepancyArgs a;
            a.descriptor = descriptor_from_document(read_json_file(disc_seq));
            a.schedule = disc_schedule.empty()
                             ? std::vector<std::uint64_t>{a.descriptor.length}
                             : parse_schedule(disc_schedule);
            emit(run_discrepancy(a), disc_out, disc_csv);
            return kExitPass;
        }
        if (weyl->parsed()) {
            WeylArgs a;
            a.descriptor = descriptor_from_document(read_json_file(weyl_seq));
            a.tag = weyl_tag;
            a.length = weyl_n;
            a.tolerance = weyl_tol;
            a.integrands = weyl_fs;
            auto [doc, pass] = run_weyl(a);
            emit(doc, weyl_out, weyl_csv);
            return pass ? kExitPass : kExitTestFailure;
        }
        if (integ->parsed()) {
            IntegrateArgs a;
            a.descriptor = descriptor_from_document(read_json_file(integ_seq));
            a.integrand = integ_f;
            a.length = integ_n;
            emit(run_integrate(a), integ_out, integ_csv);
            return kExitPass;
        }
        if (exp->parsed()) {
            ExperimentConfig cfg;
            cfg.trials = exp_trials;
            cfg.length = exp_n;
            cfg.epsilon = exp_eps;
            cfg.delta = exp_delta;
            cfg.tag = exp_tag;
            cfg.partition = PartitionConfig(exp_m, exp_p);
            cfg.master_seed = exp_seed;
            cfg.threads = env_threads();
            std::string which;
            if (slln->parsed()) {
                which = "slln";
                cfg.integrand = parse_integrand(slln_f);
            } else {
                which = "hlawka";
                cfg.grid = parse_grid(hlawka_grid);
            }
            auto [doc, pass] = run_experiment(which, cfg);
            emit(doc, exp_out, exp_csv);
            return pass ? kExitPass : kExitTestFailure;
        }
        if (rerun->parsed()) {
            const Json report = read_json_file(rerun_report);
            if (!report.contains("manifest"))
                throw ConfigError("report has no embedded manifest: " + rerun_report);
            return run_from_manifest(report["manifest"], rerun_out, rerun_csv);
        }
        throw ConfigError("no subcommand given");
    } catch (const ResolutionExhausted& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfigError;
    }
}
