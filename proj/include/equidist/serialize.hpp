#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "equidist/experiment.hpp"
#include "equidist/integrate.hpp"
#include "equidist/interval.hpp"
#include "equidist/partition.hpp"
#include "equidist/sequence.hpp"
#include "equidist/ud_tests.hpp"
#include "equidist/unit_point.hpp"

namespace equidist {

// Insertion-ordered documents keep report bytes stable across identical runs.
using Json = nlohmann::ordered_json;

std::string tool_version();

/// {"tool":"equidist","version":...,"rng":"splitmix64","subcommand":...,"config":...}
/// Every report embeds one; the config is sufficient to reproduce the rows.
Json make_manifest(const std::string& subcommand, Json config);

Json point_json(const UnitPoint& x); // {"exact":"k/2^p","decimal":"0.5"}
UnitPoint point_from_json(const Json& j);

Json partition_json(const PartitionConfig& cfg); // {"m":...,"p":...}
PartitionConfig partition_from_json(const Json& j);

Json interval_json(const IntervalQuery& q);
IntervalQuery interval_from_json(const Json& j);
/// "c,d" or "c,d,half_open" with points as "k/2^p" or exact decimals.
IntervalQuery parse_interval(const std::string& text);

/// "dyadicK" (K a power of two) or ';'-separated "c,d[,half_open]" entries.
std::vector<IntervalQuery> parse_grid(const std::string& text);
Json grid_json(const std::vector<IntervalQuery>& grid);
std::vector<IntervalQuery> grid_from_json(const Json& j);

/// ','-separated strictly increasing prefix lengths.
std::vector<std::uint64_t> parse_schedule(const std::string& text);

Json descriptor_json(const SequenceDescriptor& desc);
SequenceDescriptor descriptor_from_json(const Json& j);

/// {"kind":"sequence","descriptor":...,"rows":[{"index","exact","decimal","tag"?}],"manifest":...}
Json sequence_document(const Sequence& seq, Json manifest);
Json sequence_document(const TaggedSequence& seq, Json manifest);

/// Reads the descriptor out of a sequence document (rows are regenerable).
SequenceDescriptor descriptor_from_document(const Json& doc);

Json counting_rows_json(const CountingReport& report);
Json verdict_document(const UdVerdict& verdict, Json manifest);
Json weyl_document(const WeylReport& report, Json manifest);
Json discrepancy_document(const std::vector<std::pair<std::uint64_t, double>>& values,
                          Json manifest);
Json integrate_document(const IntegrateResult& result, Json manifest);
Json experiment_document(const ExperimentReport& report, Json manifest);

Json experiment_config_json(const ExperimentConfig& cfg);
ExperimentConfig experiment_config_from_json(const Json& j);

/// CSV projections of the row arrays (header + one line per row).
std::string sequence_csv(const Json& document);
std::string rows_csv(const Json& document);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& doc);
void write_text_file(const std::string& path, const std::string& text);

} // namespace equidist
