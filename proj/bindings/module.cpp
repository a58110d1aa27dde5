// Python bindings: a thin veneer over the C++ core. Objects cross the
// boundary as the same exact-arithmetic types the library uses; experiment
// reports cross as their canonical JSON documents.

#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "equidist/alpha.hpp"
#include "equidist/experiment.hpp"
#include "equidist/integrate.hpp"
#include "equidist/sequence.hpp"
#include "equidist/serialize.hpp"
#include "equidist/ud_tests.hpp"

namespace py = pybind11;
using namespace equidist;

namespace {

std::size_t checked_index(py::ssize_t i, std::size_t size) {
    py::ssize_t k = i;
    if (k < 0)
        k += static_cast<py::ssize_t>(size);
    if (k < 0 || static_cast<std::size_t>(k) >= size)
        throw py::index_error("sequence index " + std::to_string(i) + " out of range for length " +
                              std::to_string(size));
    return static_cast<std::size_t>(k);
}

std::vector<IntegrandSpec> parse_specs(const std::optional<std::vector<std::string>>& specs) {
    if (!specs)
        return builtin_continuous_family();
    std::vector<IntegrandSpec> out;
    out.reserve(specs->size());
    for (const std::string& s : *specs)
        out.push_back(parse_integrand(s));
    return out;
}

ExperimentConfig build_config(std::uint64_t trials, std::uint64_t length, double epsilon,
                              TagIndex tag, std::uint64_t m, std::uint32_t p,
                              std::uint64_t seed, double delta, unsigned threads,
                              const std::string& integrand, const std::string& grid) {
    ExperimentConfig cfg;
    cfg.trials = trials;
    cfg.length = length;
    cfg.epsilon = epsilon;
    cfg.tag = tag;
    cfg.partition = PartitionConfig(m, p);
    cfg.master_seed = seed;
    cfg.delta = delta;
    cfg.threads = threads;
    if (!integrand.empty())
        cfg.integrand = parse_integrand(integrand);
    if (!grid.empty())
        cfg.grid = parse_grid(grid);
    return cfg;
}

std::string report_json(const ExperimentReport& report, const ExperimentConfig& cfg) {
    return experiment_document(report, make_manifest("experiment", experiment_config_json(cfg)))
        .dump(2);
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact dyadic sequences on [0,1]: uniform-distribution tests, residue-class "
              "partitions, tagged counting, QMC integration, and seeded experiments.";
    m.attr("__version__") = EQUIDIST_VERSION;

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<ResolutionExhausted>(m, "ResolutionExhausted", PyExc_RuntimeError);

    // ---- exact points, intervals, partitions -------------------------------
    py::class_<UnitPoint>(m, "UnitPoint", "The grid point numerator/2^precision in [0,1].")
        .def(py::init<std::uint64_t, std::uint32_t>(), py::arg("numerator"), py::arg("precision"))
        .def_readonly("numerator", &UnitPoint::numerator)
        .def_readonly("precision", &UnitPoint::precision)
        .def("value", &UnitPoint::value, "Nearest double.")
        .def("exact", &UnitPoint::exact, "The exact rendering 'k/2^p'.")
        .def(py::self == py::self)
        .def(py::self < py::self)
        .def(py::self <= py::self)
        .def("__repr__", [](const UnitPoint& x) { return "UnitPoint(" + x.exact() + ")"; });

    m.def("parse_unit_point", &parse_unit_point, py::arg("text"),
          "Parse 'k/2^p' or a decimal in [0,1] to an exact grid point.");

    py::enum_<EndpointRule>(m, "EndpointRule")
        .value("CLOSED", EndpointRule::Closed)
        .value("HALF_OPEN", EndpointRule::HalfOpen);

    py::class_<IntervalQuery>(m, "Interval", "A counting interval with its endpoint rule.")
        .def(py::init<UnitPoint, UnitPoint, EndpointRule>(), py::arg("lower"), py::arg("upper"),
             py::arg("rule") = EndpointRule::Closed)
        .def_readonly("lower", &IntervalQuery::lower)
        .def_readonly("upper", &IntervalQuery::upper)
        .def_readonly("rule", &IntervalQuery::rule)
        .def("contains", &IntervalQuery::contains, py::arg("x"))
        .def("target", &IntervalQuery::target, "Interval length, the counting-ratio target.")
        .def("__repr__", [](const IntervalQuery& q) { return q.describe(); });

    m.def("parse_interval", &parse_interval, py::arg("text"),
          "Parse 'lower,upper' or 'lower,upper,half_open'.");
    m.def("parse_grid", &parse_grid, py::arg("text"),
          "Parse 'dyadicK' or a ';'-separated interval list.");
    m.def("dyadic_grid", &dyadic_grid, py::arg("pieces") = 8,
          "The closed dyadic interval grid with the given power-of-two piece count.");
    m.def("default_schedule", &default_schedule);

    py::class_<PartitionConfig>(m, "Partition",
                                "Residue classes of the dyadic grid: k/2^p has tag k mod m.")
        .def(py::init<std::uint64_t, std::uint32_t>(), py::arg("m"), py::arg("p"))
        .def_readonly("tag_count", &PartitionConfig::tag_count)
        .def_readonly("precision", &PartitionConfig::precision)
        .def("grid_size", &PartitionConfig::grid_size)
        .def("__repr__", [](const PartitionConfig& c) {
            return "Partition(m=" + std::to_string(c.tag_count) +
                   ", p=" + std::to_string(c.precision) + ")";
        });

    m.def("tag_of", &tag_of, py::arg("x"), py::arg("partition"),
          "Residue class of the grid point.");
    m.def("is_member", &is_member, py::arg("x"), py::arg("tag"), py::arg("partition"));
    m.def("pick_in_interval", &pick_in_interval, py::arg("lower"), py::arg("upper"),
          py::arg("tag"), py::arg("partition"),
          "Largest class member strictly inside the open interval; raises "
          "ResolutionExhausted when the class misses it.");

    // ---- sequences ---------------------------------------------------------
    py::class_<Sequence>(m, "Sequence", "A materialized prefix of exact grid points.")
        .def("__len__", &Sequence::size)
        .def("__getitem__",
             [](const Sequence& s, py::ssize_t i) { return s.at(checked_index(i, s.size())); })
        .def_property_readonly("precision", &Sequence::precision)
        .def_property_readonly("kind", [](const Sequence& s) { return s.descriptor().kind(); })
        .def("values",
             [](const Sequence& s) {
                 std::vector<double> out;
                 out.reserve(s.size());
                 for (std::size_t i = 0; i < s.size(); ++i)
                     out.push_back(s.at(i).value());
                 return out;
             },
             "All elements as doubles, in order.")
        .def("__repr__", [](const Sequence& s) {
            return "Sequence(kind=" + s.descriptor().kind() + ", n=" + std::to_string(s.size()) +
                   ", p=" + std::to_string(s.precision()) + ")";
        });

    py::class_<TaggedSequence>(m, "TaggedSequence",
                               "A sequence whose elements carry partition tags.")
        .def("__len__", &TaggedSequence::size)
        .def("__getitem__", [](const TaggedSequence& s, py::ssize_t i) {
            return s.at(checked_index(i, s.size()));
        })
        .def("tag_at",
             [](const TaggedSequence& s, py::ssize_t i) {
                 return s.tag_at(checked_index(i, s.size()));
             },
             py::arg("i"))
        .def_property_readonly("base", &TaggedSequence::base)
        .def_property_readonly("partition", &TaggedSequence::partition)
        .def_property_readonly("provenance",
                               [](const TaggedSequence& s) { return provenance_name(s.provenance()); })
        .def("__repr__", [](const TaggedSequence& s) {
            return "TaggedSequence(" + provenance_name(s.provenance()) +
                   ", n=" + std::to_string(s.size()) + ")";
        });

    m.def("kronecker",
          [](const std::string& alpha, std::uint64_t n, std::uint32_t p) {
              return kronecker(parse_alpha(alpha), n, p);
          },
          py::arg("alpha"), py::arg("n"), py::arg("p") = 32,
          "Fractional parts of alpha*n on the dyadic grid; alpha is a named "
          "irrational ('sqrt2', 'golden', ...) or a decimal string.");
    m.def("van_der_corput", &van_der_corput, py::arg("base"), py::arg("n"), py::arg("p") = 32,
          "Radical-inverse sequence in the given base.");
    m.def("iid_uniform", &iid_uniform, py::arg("seed"), py::arg("n"), py::arg("p") = 32,
          "Seeded i.i.d. uniform draws on the grid.");
    m.def("sample_tagged", &sample_tagged, py::arg("seed"), py::arg("tag"), py::arg("n"),
          py::arg("partition"), "Seeded i.i.d. draws from one residue class.");
    m.def("lift_to_tag", &lift_to_tag, py::arg("sequence"), py::arg("tag"), py::arg("partition"),
          "Move every element into the class, term n by less than 1/n, without leaving (0, x_n).");
    m.def("diagonal_spoiler", &diagonal_spoiler, py::arg("sequence"), py::arg("partition"),
          "Re-place term n into class n-1, so every class holds at most one element.");
    m.def("witness_tags", &witness_tags, py::arg("sequence"),
          "The set of tags the sequence actually touches.");

    // ---- uniform-distribution tests ----------------------------------------
    m.def("interval_count",
          py::overload_cast<const Sequence&, const IntervalQuery&, std::uint64_t>(&interval_count),
          py::arg("sequence"), py::arg("interval"), py::arg("n"));
    m.def("interval_count_ratio", &interval_count_ratio, py::arg("sequence"), py::arg("interval"),
          py::arg("n"), "#{k <= n : x_k in the interval} / n.");
    m.def("tagged_count", &tagged_count, py::arg("sequence"), py::arg("interval"), py::arg("tag"),
          py::arg("partition"), py::arg("n"));
    m.def("tagged_count_ratio",
          py::overload_cast<const Sequence&, const IntervalQuery&, TagIndex,
                            const PartitionConfig&, std::uint64_t>(&tagged_count_ratio),
          py::arg("sequence"), py::arg("interval"), py::arg("tag"), py::arg("partition"),
          py::arg("n"), "#{k <= n : x_k in the interval and in the class} / n.");
    m.def("star_discrepancy", &star_discrepancy, py::arg("sequence"), py::arg("n"),
          "D*_n of the prefix, evaluated in integer arithmetic.");

    py::class_<UdVerdict>(m, "Verdict",
                          "Uniform-distribution decision at the final schedule point.")
        .def_property_readonly("ok", [](const UdVerdict& v) { return v.pass; })
        .def_readonly("tolerance", &UdVerdict::tolerance)
        .def_readonly("failing_n", &UdVerdict::failing_n)
        .def_property_readonly("failing_interval",
                               [](const UdVerdict& v) { return v.failing_interval; })
        .def_property_readonly("max_final_deviation",
                               [](const UdVerdict& v) { return v.counts.max_final_deviation; })
        .def("__repr__", [](const UdVerdict& v) {
            return std::string("Verdict(") + (v.pass ? "pass" : "fail") + ", max_final_deviation=" +
                   std::to_string(v.counts.max_final_deviation) + ")";
        });

    m.def("ud_verdict",
          [](const Sequence& seq, std::optional<std::vector<IntervalQuery>> grid,
             std::optional<std::vector<std::uint64_t>> schedule, double tol,
             std::optional<TagIndex> tag, std::optional<PartitionConfig> partition) {
              std::vector<IntervalQuery> g = grid ? *grid : dyadic_grid();
              std::vector<std::uint64_t> sched;
              if (schedule) {
                  sched = *schedule;
              } else {
                  for (std::uint64_t n : default_schedule())
                      if (n <= seq.size())
                          sched.push_back(n);
                  if (sched.empty() || sched.back() != seq.size())
                      sched.push_back(seq.size());
              }
              return ud_verdict(seq, g, sched, tol, tag, partition ? &*partition : nullptr);
          },
          py::arg("sequence"), py::arg("grid") = py::none(), py::arg("schedule") = py::none(),
          py::arg("tol") = kDefaultTolerance, py::arg("tag") = py::none(),
          py::arg("partition") = py::none(),
          "Pass iff every interval's final-schedule deviation is within tol; "
          "give tag and partition for tagged counting.");

    py::class_<WeylRow>(m, "WeylRow")
        .def_readonly("label", &WeylRow::label)
        .def_readonly("mean", &WeylRow::mean)
        .def_readonly("reference", &WeylRow::reference)
        .def_readonly("deviation", &WeylRow::deviation);

    py::class_<WeylReport>(m, "WeylReport",
                           "Tagged empirical means of continuous test functions against "
                           "their reference integrals.")
        .def_property_readonly("ok", [](const WeylReport& r) { return r.pass; })
        .def_readonly("tolerance", &WeylReport::tolerance)
        .def_readonly("max_deviation", &WeylReport::max_deviation)
        .def_readonly("tag", &WeylReport::tag)
        .def_readonly("rows", &WeylReport::rows);

    m.def("tagged_weyl_check",
          [](const TaggedSequence& seq, TagIndex tag,
             std::optional<std::vector<std::string>> integrands, std::optional<std::uint64_t> n,
             double tol) {
              return tagged_weyl_check(seq, tag, parse_specs(integrands),
                                       n ? *n : seq.size(), tol, seq.partition());
          },
          py::arg("sequence"), py::arg("tag"), py::arg("integrands") = py::none(),
          py::arg("n") = py::none(), py::arg("tol") = kDefaultTolerance,
          "Check tagged means of continuous integrands (default: the built-in "
          "continuous family) against their integrals.");

    // ---- integration -------------------------------------------------------
    py::class_<IntegrateResult>(m, "IntegrateResult")
        .def_readonly("integrand", &IntegrateResult::integrand)
        .def_readonly("n", &IntegrateResult::n)
        .def_readonly("estimate", &IntegrateResult::estimate)
        .def_readonly("reference", &IntegrateResult::reference)
        .def_readonly("deviation", &IntegrateResult::deviation)
        .def("__repr__", [](const IntegrateResult& r) {
            return "IntegrateResult(" + r.integrand + ", n=" + std::to_string(r.n) +
                   ", estimate=" + std::to_string(r.estimate) + ")";
        });

    m.def("quadrature_reference",
          [](const std::string& f) { return quadrature_reference(parse_integrand(f)); },
          py::arg("integrand"), "The reference integral of the integrand over [0,1].");
    m.def("qmc_integrate",
          [](const std::string& f, const Sequence& seq, std::optional<std::uint64_t> n) {
              return qmc_integrate(parse_integrand(f), seq, n ? *n : seq.size());
          },
          py::arg("integrand"), py::arg("sequence"), py::arg("n") = py::none(),
          "Mean of f along the sequence prefix against the reference integral.");
    m.def("tagged_integrate",
          [](const std::string& f, const TaggedSequence& seq, std::optional<std::uint64_t> n,
             std::optional<TagIndex> tag) {
              IntegrandSpec spec = parse_integrand(f);
              if (tag)
                  spec = with_tag(without_tag(spec), *tag);
              return tagged_integrate(spec, seq, n ? *n : seq.size(), seq.partition());
          },
          py::arg("integrand"), py::arg("sequence"), py::arg("n") = py::none(),
          py::arg("tag") = py::none(),
          "Mean of the class-restricted integrand along a tagged sequence; pass tag "
          "to restrict a plain integrand, or use a 'tagged:t:...' spec directly.");
    m.def("builtin_integrands",
          [] {
              std::vector<std::string> out;
              for (const IntegrandSpec& f : builtin_family())
                  out.push_back(f.label());
              return out;
          },
          "Canonical labels of the built-in integrand family.");
    m.def("builtin_continuous_integrands", [] {
        std::vector<std::string> out;
        for (const IntegrandSpec& f : builtin_continuous_family())
            out.push_back(f.label());
        return out;
    });

    // ---- experiments -------------------------------------------------------
    m.def("slln_experiment_json",
          [](std::uint64_t trials, std::uint64_t length, double epsilon, TagIndex tag,
             std::uint64_t m_, std::uint32_t p, std::uint64_t seed, double delta,
             unsigned threads, const std::string& integrand) {
              const ExperimentConfig cfg = build_config(trials, length, epsilon, tag, m_, p,
                                                        seed, delta, threads, integrand, "");
              return report_json(slln_experiment(cfg), cfg);
          },
          py::arg("trials") = 200, py::arg("length") = 10000, py::arg("epsilon") = 0.02,
          py::arg("tag") = 0, py::arg("m") = 4, py::arg("p") = 32, py::arg("seed") = 0,
          py::arg("delta") = kDefaultDelta, py::arg("threads") = 1,
          py::arg("integrand") = "poly:0,1",
          "Seeded mean-convergence experiment; returns the canonical JSON report.");
    m.def("hlawka_experiment_json",
          [](std::uint64_t trials, std::uint64_t length, double epsilon, TagIndex tag,
             std::uint64_t m_, std::uint32_t p, std::uint64_t seed, double delta,
             unsigned threads, const std::string& grid) {
              const ExperimentConfig cfg = build_config(trials, length, epsilon, tag, m_, p,
                                                        seed, delta, threads, "", grid);
              return report_json(hlawka_experiment(cfg), cfg);
          },
          py::arg("trials") = 200, py::arg("length") = 10000, py::arg("epsilon") = 0.02,
          py::arg("tag") = 0, py::arg("m") = 4, py::arg("p") = 32, py::arg("seed") = 0,
          py::arg("delta") = kDefaultDelta, py::arg("threads") = 1, py::arg("grid") = "",
          "Seeded interval-distribution experiment; returns the canonical JSON report.");
}
