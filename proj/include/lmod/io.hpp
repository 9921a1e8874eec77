#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "lmod/linkstream.hpp"
#include "lmod/partition.hpp"
#include "lmod/properties.hpp"
#include "lmod/quality.hpp"

namespace lmod::io {

// Everything needed to reproduce one CLI run; embedded in every report.
struct RunManifest {
    std::string command;
    std::vector<std::string> inputs;
    double resolution_seconds = 1.0;
    std::map<std::string, std::string> parameters;
    std::vector<std::string> outputs;
};

enum class StreamFormat {
    LsCsv,          // header "t,u,v[,w]", one event per line
    SocioPatterns,  // whitespace-separated "t i j Ci Cj" contact rows
};
StreamFormat parse_format(std::string_view text);

struct StreamReadOptions {
    StreamFormat format = StreamFormat::LsCsv;
    double resolution_seconds = 1.0;
    // Raw-second domain override [first, second]; without it the domain is
    // inferred from the first and last event.
    std::optional<std::pair<double, double>> raw_domain;
};

// Parses and quantizes: tick = floor((t_raw - t0) / resolution). Throws
// IoError with the offending line number on malformed input.
LinkStream read_stream(const std::string& path, const StreamReadOptions& options);

// Partition CSV: header "node,community,start_tick,end_tick", intervals
// inclusive, nodes by stream name. Reading validates against the stream.
TemporalPartition read_partition(const std::string& path, const LinkStream& stream);
void write_partition(const TemporalPartition& partition, const LinkStream& stream,
                     std::ostream& out);
void write_partition(const TemporalPartition& partition, const LinkStream& stream,
                     const std::string& path);

// Class-based day partition: days are maximal activity periods separated by
// inactive spans longer than gap_hours; every contact-active node with class
// metadata is affiliated with its class from each day's first to last global
// interaction tick, unaffiliated overnight.
TemporalPartition build_day_partition(const LinkStream& stream, double gap_hours = 4.0);

// Rounds to `digits` significant decimal digits (report convention: 12).
double round_sig(double value, int digits = 12);
std::string format_sig(double value, int digits = 12);

nlohmann::json manifest_json(const RunManifest& manifest);

// Score report: q, decomposed terms, rho, per-community breakdown. Terms are
// rounded to 12 significant digits and q is re-derived from the rounded
// terms so that q = l - e - s holds exactly on the emitted values. The
// manifest overload embeds the run manifest.
nlohmann::json quality_report_json(const QualityReport& report,
                                   const TemporalPartition& partition);
nlohmann::json quality_report_json(const QualityReport& report,
                                   const TemporalPartition& partition,
                                   const RunManifest& manifest);

nlohmann::json property_check_json(const PropertyCheck& check, bool expected);

} // namespace lmod::io
