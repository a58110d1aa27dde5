#include "equidist/serialize.hpp"

#include <fstream>
#include <sstream>

#include "equidist/alpha.hpp"
#include "equidist/errors.hpp"

#ifndef EQUIDIST_VERSION
#define EQUIDIST_VERSION "0.0.0"
#endif

namespace equidist {

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

std::uint64_t get_u64(const Json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number_unsigned())
        throw ConfigError(std::string("expected unsigned field '") + key + "'");
    return j[key].get<std::uint64_t>();
}

std::string get_str(const Json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_string())
        throw ConfigError(std::string("expected string field '") + key + "'");
    return j[key].get<std::string>();
}

} // namespace

std::string tool_version() { return EQUIDIST_VERSION; }

Json make_manifest(const std::string& subcommand, Json config) {
    Json m;
    m["tool"] = "equidist";
    m["version"] = tool_version();
    m["rng"] = "splitmix64";
    m["subcommand"] = subcommand;
    m["config"] = std::move(config);
    return m;
}

Json point_json(const UnitPoint& x) {
    Json j;
    j["exact"] = x.exact();
    j["decimal"] = decimal_string(x);
    return j;
}

UnitPoint point_from_json(const Json& j) {
    if (j.is_string()) return parse_unit_point(j.get<std::string>());
    return parse_unit_point(get_str(j, "exact"));
}

Json partition_json(const PartitionConfig& cfg) {
    Json j;
    j["m"] = cfg.tag_count;
    j["p"] = cfg.precision;
    return j;
}

PartitionConfig partition_from_json(const Json& j) {
    return PartitionConfig(get_u64(j, "m"), static_cast<std::uint32_t>(get_u64(j, "p")));
}

Json interval_json(const IntervalQuery& q) {
    Json j;
    j["c"] = point_json(q.lower);
    j["d"] = point_json(q.upper);
    j["rule"] = (q.rule == EndpointRule::HalfOpen) ? "half_open" : "closed";
    return j;
}

IntervalQuery interval_from_json(const Json& j) {
    const std::string rule = j.contains("rule") ? get_str(j, "rule") : "closed";
    if (rule != "closed" && rule != "half_open")
        throw ConfigError("unknown endpoint rule: '" + rule + "'");
    return IntervalQuery(point_from_json(j["c"]), point_from_json(j["d"]),
                         rule == "half_open" ? EndpointRule::HalfOpen : EndpointRule::Closed);
}

IntervalQuery parse_interval(const std::string& text) {
    const auto parts = split(text, ',');
    if (parts.size() != 2 && parts.size() != 3)
        throw ConfigError("interval needs the form c,d[,half_open], got '" + text + "'");
    EndpointRule rule = EndpointRule::Closed;
    if (parts.size() == 3) {
        if (parts[2] == "half_open")
            rule = EndpointRule::HalfOpen;
        else if (parts[2] == "closed")
            rule = EndpointRule::Closed;
        else
            throw ConfigError("unknown endpoint rule: '" + parts[2] + "'");
    }
    return IntervalQuery(parse_unit_point(parts[0]), parse_unit_point(parts[1]), rule);
}

std::vector<IntervalQuery> parse_grid(const std::string& text) {
    if (text.rfind("dyadic", 0) == 0) {
        const std::string tail = text.substr(6);
        try {
            std::size_t used = 0;
            const unsigned long pieces = std::stoul(tail, &used);
            if (used != tail.size()) throw std::invalid_argument(tail);
            return dyadic_grid(static_cast<std::uint32_t>(pieces));
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception&) {
            throw ConfigError("bad grid spec '" + text + "' (use dyadicK or c,d;c,d;...)");
        }
    }
    std::vector<IntervalQuery> grid;
    for (const auto& piece : split(text, ';'))
        grid.push_back(parse_interval(piece));
    if (grid.empty()) throw ConfigError("grid is empty");
    return grid;
}

Json grid_json(const std::vector<IntervalQuery>& grid) {
    Json j = Json::array();
    for (const IntervalQuery& q : grid)
        j.push_back(interval_json(q));
    return j;
}

std::vector<IntervalQuery> grid_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) throw ConfigError("grid must be a nonempty array");
    std::vector<IntervalQuery> grid;
    for (const auto& item : j)
        grid.push_back(interval_from_json(item));
    return grid;
}

std::vector<std::uint64_t> parse_schedule(const std::string& text) {
    std::vector<std::uint64_t> schedule;
    for (const auto& piece : split(text, ',')) {
        try {
            std::size_t used = 0;
            const unsigned long long v = std::stoull(piece, &used);
            if (used != piece.size()) throw std::invalid_argument(piece);
            schedule.push_back(v);
        } catch (const std::exception&) {
            throw ConfigError("bad schedule entry '" + piece + "'");
        }
    }
    for (std::size_t i = 1; i < schedule.size(); ++i)
        if (schedule[i] <= schedule[i - 1])
            throw ConfigError("schedule must be strictly increasing");
    if (schedule.empty() || schedule.front() == 0)
        throw ConfigError("schedule needs positive entries");
    return schedule;
}

Json descriptor_json(const SequenceDescriptor& desc) {
    Json j;
    j["kind"] = desc.kind();
    Json params = Json::object();
    struct Visitor {
        Json& j;
        Json& params;
        void operator()(const KroneckerParams& p) const { params["alpha"] = p.alpha.spec; }
        void operator()(const VanDerCorputParams& p) const { params["base"] = p.base; }
        void operator()(const IidUniformParams& p) const { j["seed"] = p.seed; }
        void operator()(const SampledParams& p) const {
            params["tag"] = p.tag;
            params["partition"] = partition_json(p.partition);
            j["seed"] = p.seed;
        }
        void operator()(const LiftParams& p) const {
            params["tag"] = p.tag;
            params["partition"] = partition_json(p.partition);
            params["base"] = descriptor_json(*p.base);
        }
        void operator()(const SpoilerParams& p) const {
            params["partition"] = partition_json(p.partition);
            params["base"] = descriptor_json(*p.base);
        }
    };
    std::visit(Visitor{j, params}, desc.params);
    j["params"] = std::move(params);
    j["N"] = desc.length;
    j["p"] = desc.precision;
    return j;
}

SequenceDescriptor descriptor_from_json(const Json& j) {
    SequenceDescriptor desc;
    const std::string kind = get_str(j, "kind");
    desc.length = get_u64(j, "N");
    desc.precision = static_cast<std::uint32_t>(get_u64(j, "p"));
    const Json params = j.contains("params") ? j["params"] : Json::object();
    if (kind == "kronecker") {
        desc.params = KroneckerParams{parse_alpha(get_str(params, "alpha"))};
    } else if (kind == "van_der_corput") {
        desc.params = VanDerCorputParams{get_u64(params, "base")};
    } else if (kind == "iid_uniform") {
        desc.params = IidUniformParams{get_u64(j, "seed")};
    } else if (kind == "sampled") {
        desc.params = SampledParams{get_u64(j, "seed"), get_u64(params, "tag"),
                                    partition_from_json(params["partition"])};
    } else if (kind == "lift") {
        auto base = std::make_shared<const SequenceDescriptor>(
            descriptor_from_json(params["base"]));
        desc.params = LiftParams{get_u64(params, "tag"), partition_from_json(params["partition"]),
                                 std::move(base)};
    } else if (kind == "spoiler") {
        auto base = std::make_shared<const SequenceDescriptor>(
            descriptor_from_json(params["base"]));
        desc.params = SpoilerParams{partition_from_json(params["partition"]), std::move(base)};
    } else {
        throw ConfigError("unknown sequence kind: '" + kind + "'");
    }
    return desc;
}

namespace {

Json sequence_rows(const Sequence& seq, const std::vector<TagIndex>* tags) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < seq.size(); ++i) {
        Json row;
        row["index"] = i + 1;
        const UnitPoint x = seq.at(i);
        row["exact"] = x.exact();
        row["decimal"] = decimal_string(x);
        if (tags) row["tag"] = (*tags)[i];
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace

Json sequence_document(const Sequence& seq, Json manifest) {
    Json doc;
    doc["kind"] = "sequence";
    doc["descriptor"] = descriptor_json(seq.descriptor());
    doc["rows"] = sequence_rows(seq, nullptr);
    doc["manifest"] = std::move(manifest);
    return doc;
}

Json sequence_document(const TaggedSequence& seq, Json manifest) {
    Json doc;
    doc["kind"] = "sequence";
    doc["descriptor"] = descriptor_json(seq.base().descriptor());
    doc["rows"] = sequence_rows(seq.base(), &seq.tags());
    doc["manifest"] = std::move(manifest);
    return doc;
}

SequenceDescriptor descriptor_from_document(const Json& doc) {
    if (!doc.contains("descriptor"))
        throw ConfigError("sequence document is missing its descriptor");
    return descriptor_from_json(doc["descriptor"]);
}

namespace {

Json target_json(const IntervalQuery& q) {
    // d - c at the common precision is itself a grid value; render it exactly.
    const std::uint32_t prec = std::max(q.lower.precision, q.upper.precision);
    const UnitPoint len(q.upper.numerator_at(prec) - q.lower.numerator_at(prec), prec);
    return point_json(len);
}

Json counting_row_json(const CountingRow& row) {
    Json r;
    r["interval"] = Json::array({point_json(row.interval.lower), point_json(row.interval.upper)});
    r["rule"] = (row.interval.rule == EndpointRule::HalfOpen) ? "half_open" : "closed";
    r["N"] = row.n;
    r["count"] = row.count;
    r["ratio"] = row.ratio;
    r["target"] = row.target;
    r["target_exact"] = target_json(row.interval)["exact"];
    r["deviation"] = row.deviation;
    return r;
}

} // namespace

Json counting_rows_json(const CountingReport& report) {
    Json rows = Json::array();
    for (const CountingRow& row : report.rows)
        rows.push_back(counting_row_json(row));
    return rows;
}

Json verdict_document(const UdVerdict& verdict, Json manifest) {
    Json doc;
    doc["kind"] = "verdict";
    Json config;
    config["tolerance"] = verdict.tolerance;
    config["schedule"] = verdict.counts.schedule;
    if (verdict.tag) config["tag"] = *verdict.tag;
    doc["config"] = std::move(config);
    doc["rows"] = counting_rows_json(verdict.counts);
    doc["max_final_deviation"] = verdict.counts.max_final_deviation;
    if (verdict.failing_interval) {
        doc["failing_interval"] = Json::array({point_json(verdict.failing_interval->lower),
                                               point_json(verdict.failing_interval->upper)});
        doc["failing_N"] = verdict.failing_n;
    }
    doc["pass"] = verdict.pass;
    doc["manifest"] = std::move(manifest);
    return doc;
}

Json weyl_document(const WeylReport& report, Json manifest) {
    Json doc;
    doc["kind"] = "weyl";
    Json config;
    config["tolerance"] = report.tolerance;
    config["tag"] = report.tag;
    doc["config"] = std::move(config);
    Json rows = Json::array();
    for (const WeylRow& row : report.rows) {
        Json r;
        r["integrand"] = row.label;
        r["mean"] = row.mean;
        r["reference"] = row.reference;
        r["deviation"] = row.deviation;
        rows.push_back(std::move(r));
    }
    doc["rows"] = std::move(rows);
    doc["max_deviation"] = report.max_deviation;
    doc["pass"] = report.pass;
    doc["manifest"] = std::move(manifest);
    return doc;
}

Json discrepancy_document(const std::vector<std::pair<std::uint64_t, double>>& values,
                          Json manifest) {
    Json doc;
    doc["kind"] = "discrepancy";
    Json rows = Json::array();
    for (const auto& [n, value] : values) {
        Json r;
        r["N"] = n;
        r["value"] = value;
        rows.push_back(std::move(r));
    }
    doc["rows"] = std::move(rows);
    doc["pass"] = true; // diagnostic only: there is no threshold to fail
    doc["manifest"] = std::move(manifest);
    return doc;
}

Json integrate_document(const IntegrateResult& result, Json manifest) {
    Json doc;
    doc["kind"] = "integrate";
    Json rows = Json::array();
    Json r;
    r["integrand"] = result.integrand;
    r["N"] = result.n;
    r["estimate"] = result.estimate;
    r["reference"] = result.reference;
    r["deviation"] = result.deviation;
    rows.push_back(std::move(r));
    doc["rows"] = std::move(rows);
    doc["pass"] = true; // estimates are reported raw; no acceptance threshold
    doc["manifest"] = std::move(manifest);
    return doc;
}

Json experiment_config_json(const ExperimentConfig& cfg) {
    Json j;
    j["trials"] = cfg.trials;
    j["N"] = cfg.length;
    j["epsilon"] = cfg.epsilon;
    j["tag"] = cfg.tag;
    j["partition"] = partition_json(cfg.partition);
    if (cfg.integrand) j["integrand"] = format_integrand(*cfg.integrand);
    if (!cfg.grid.empty()) j["grid"] = grid_json(cfg.grid);
    j["seed"] = cfg.master_seed;
    j["delta"] = cfg.delta;
    return j;
}

ExperimentConfig experiment_config_from_json(const Json& j) {
    ExperimentConfig cfg;
    cfg.trials = get_u64(j, "trials");
    cfg.length = get_u64(j, "N");
    cfg.epsilon = j.at("epsilon").get<double>();
    cfg.tag = get_u64(j, "tag");
    cfg.partition = partition_from_json(j.at("partition"));
    if (j.contains("integrand")) cfg.integrand = parse_integrand(get_str(j, "integrand"));
    if (j.contains("grid")) cfg.grid = grid_from_json(j["grid"]);
    cfg.master_seed = get_u64(j, "seed");
    cfg.delta = j.at("delta").get<double>();
    return cfg;
}

Json experiment_document(const ExperimentReport& report, Json manifest) {
    Json doc;
    doc["kind"] = "experiment-" + report.kind;
    doc["config"] = experiment_config_json(report.config);
    Json rows = Json::array();
    for (const TrialRow& row : report.rows) {
        Json r;
        r["trial"] = row.trial;
        r["seed"] = row.seed;
        r["pass"] = row.pass;
        r["deviation"] = row.deviation;
        rows.push_back(std::move(r));
    }
    doc["rows"] = std::move(rows);
    doc["passed"] = report.passed;
    doc["pass_fraction"] = report.pass_fraction;
    doc["pass"] = report.pass;
    doc["manifest"] = std::move(manifest);
    return doc;
}

namespace {

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string csv_cell(const Json& v) {
    if (v.is_string()) return csv_escape(v.get<std::string>());
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_array()) {
        // Nested point pairs flatten to exact strings joined by ':'.
        std::string out;
        for (const auto& item : v) {
            if (!out.empty()) out += ':';
            out += item.is_object() && item.contains("exact")
                       ? item["exact"].get<std::string>()
                       : item.dump();
        }
        return csv_escape(out);
    }
    return v.dump();
}

std::string rows_to_csv(const Json& rows) {
    if (!rows.is_array() || rows.empty()) return "";
    std::string out;
    bool first = true;
    for (const auto& [key, value] : rows.front().items()) {
        (void)value;
        if (!first) out += ',';
        out += csv_escape(key);
        first = false;
    }
    out += '\n';
    for (const auto& row : rows) {
        first = true;
        for (const auto& [key, value] : row.items()) {
            (void)key;
            if (!first) out += ',';
            out += csv_cell(value);
            first = false;
        }
        out += '\n';
    }
    return out;
}

} // namespace

std::string sequence_csv(const Json& document) { return rows_to_csv(document.at("rows")); }

std::string rows_csv(const Json& document) { return rows_to_csv(document.at("rows")); }

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read file: " + path);
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ConfigError("invalid JSON in " + path + ": " + e.what());
    }
    return j;
}

void write_json_file(const std::string& path, const Json& doc) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write file: " + path);
    out << doc.dump(2) << '\n';
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write file: " + path);
    out << text;
}

} // namespace equidist
