#include "lmod/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "lmod/errors.hpp"

namespace lmod::io {
namespace {

std::string strip(std::string text) {
    while (!text.empty() && (text.back() == '\r' || text.back() == '\n' || text.back() == ' '))
        text.pop_back();
    std::size_t head = 0;
    while (head < text.size() && text[head] == ' ') ++head;
    return text.substr(head);
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            fields.push_back(strip(line.substr(start)));
            return fields;
        }
        fields.push_back(strip(line.substr(start, comma - start)));
        start = comma + 1;
    }
}

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> fields;
    std::istringstream in(line);
    std::string field;
    while (in >> field) fields.push_back(field);
    return fields;
}

double parse_number(const std::string& text, std::size_t line_no) {
    const char* begin = text.c_str();
    char* end = nullptr;
    const double value = std::strtod(begin, &end);
    if (end == begin || *end != '\0')
        throw IoError("not a number: '" + text + "'", line_no);
    return value;
}

Tick parse_tick(const std::string& text, std::size_t line_no) {
    const char* begin = text.c_str();
    char* end = nullptr;
    const long long value = std::strtoll(begin, &end, 10);
    if (end == begin || *end != '\0')
        throw IoError("not a tick: '" + text + "'", line_no);
    return static_cast<Tick>(value);
}

struct RawEvent {
    double t;
    std::string u, v;
    double w;
    std::string class_u, class_v;
};

} // namespace

StreamFormat parse_format(std::string_view text) {
    if (text == "ls-csv") return StreamFormat::LsCsv;
    if (text == "sociopatterns") return StreamFormat::SocioPatterns;
    throw ValidationError("unknown stream format '" + std::string(text) + "'");
}

LinkStream read_stream(const std::string& path, const StreamReadOptions& options) {
    if (options.resolution_seconds <= 0.0)
        throw ValidationError("resolution must be positive");
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open '" + path + "'");

    std::vector<RawEvent> rows;
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    bool has_weight = false;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip(line);
        if (line.empty()) continue;

        if (options.format == StreamFormat::LsCsv) {
            auto fields = split_csv(line);
            if (!header_seen) {
                if (fields.size() < 3 || fields[0] != "t" || fields[1] != "u" || fields[2] != "v" ||
                    (fields.size() == 4 && fields[3] != "w") || fields.size() > 4)
                    throw IoError("expected header 't,u,v[,w]'", line_no);
                has_weight = fields.size() == 4;
                header_seen = true;
                continue;
            }
            if (fields.size() != (has_weight ? 4u : 3u))
                throw IoError("wrong column count", line_no);
            RawEvent row;
            row.t = parse_number(fields[0], line_no);
            row.u = fields[1];
            row.v = fields[2];
            row.w = has_weight ? parse_number(fields[3], line_no) : 1.0;
            if (row.w <= 0.0)
                throw IoError("non-positive weight", line_no);
            rows.push_back(std::move(row));
        } else {
            auto fields = split_ws(line);
            if (fields.size() != 5)
                throw IoError("expected 't i j Ci Cj'", line_no);
            RawEvent row;
            row.t = parse_number(fields[0], line_no);
            row.u = fields[1];
            row.v = fields[2];
            row.w = 1.0;
            row.class_u = fields[3];
            row.class_v = fields[4];
            rows.push_back(std::move(row));
        }
    }
    if (rows.empty())
        throw IoError("no interactions in '" + path + "'");

    double t0 = rows.front().t;
    for (const auto& row : rows) t0 = std::min(t0, row.t);
    LinkStreamBuilder builder;
    builder.tick_seconds(options.resolution_seconds);
    if (options.raw_domain) {
        const auto [raw_lo, raw_hi] = *options.raw_domain;
        if (raw_lo > raw_hi)
            throw ValidationError("domain override start exceeds its end");
        t0 = raw_lo;
        const Tick last = static_cast<Tick>(std::floor((raw_hi - raw_lo) / options.resolution_seconds));
        builder.domain(0, last, options.resolution_seconds);
    }
    for (const auto& row : rows) {
        const NodeId u = builder.add_node(row.u, row.class_u);
        const NodeId v = builder.add_node(row.v, row.class_v);
        const Tick t = static_cast<Tick>(std::floor((row.t - t0) / options.resolution_seconds));
        builder.add(u, v, t, row.w);
    }
    return builder.build();
}

TemporalPartition read_partition(const std::string& path, const LinkStream& stream) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open '" + path + "'");

    std::vector<SegmentEntry> entries;
    std::vector<std::string> labels;
    std::map<std::string, CommunityId> label_ids;
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip(line);
        if (line.empty()) continue;
        auto fields = split_csv(line);
        if (!header_seen) {
            if (fields.size() != 4 || fields[0] != "node" || fields[1] != "community" ||
                fields[2] != "start_tick" || fields[3] != "end_tick")
                throw IoError("expected header 'node,community,start_tick,end_tick'", line_no);
            header_seen = true;
            continue;
        }
        if (fields.size() != 4)
            throw IoError("wrong column count", line_no);
        SegmentEntry entry;
        entry.node = stream.node(fields[0]);
        auto [it, fresh] = label_ids.emplace(fields[1], static_cast<CommunityId>(labels.size()));
        if (fresh) labels.push_back(fields[1]);
        entry.community = it->second;
        entry.span.start = parse_tick(fields[2], line_no);
        entry.span.end = parse_tick(fields[3], line_no);
        entries.push_back(entry);
    }
    if (!header_seen)
        throw IoError("empty partition file '" + path + "'");

    auto partition =
        TemporalPartition::from_segments(stream.node_count(), std::move(entries), std::move(labels));
    const auto problems = validate(partition, stream);
    if (!problems.empty()) {
        std::string message = "partition inconsistent with stream:";
        for (const auto& p : problems) message += "\n  " + p;
        throw ValidationError(message);
    }
    return partition;
}

void write_partition(const TemporalPartition& partition, const LinkStream& stream,
                     std::ostream& out) {
    out << "node,community,start_tick,end_tick\n";
    for (const auto& entry : partition.all_segments()) {
        out << stream.node_name(entry.node) << ',' << partition.label(entry.community) << ','
            << entry.span.start << ',' << entry.span.end << '\n';
    }
}

void write_partition(const TemporalPartition& partition, const LinkStream& stream,
                     const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot write '" + path + "'");
    write_partition(partition, stream, out);
    if (!out)
        throw IoError("failed while writing '" + path + "'");
}

TemporalPartition build_day_partition(const LinkStream& stream, double gap_hours) {
    if (!stream.has_class_metadata())
        throw ValidationError("stream carries no class metadata");
    if (stream.events().empty())
        throw ValidationError("cannot segment an empty stream into days");
    if (gap_hours <= 0.0)
        throw ValidationError("gap threshold must be positive");

    const double gap_seconds = gap_hours * 3600.0;
    const double tick_seconds = stream.domain().tick_seconds;
    std::vector<TickInterval> days;
    Tick day_start = stream.events().front().t;
    Tick previous = day_start;
    for (const auto& event : stream.events()) {
        const double silence = static_cast<double>(event.t - previous - 1) * tick_seconds;
        if (silence > gap_seconds) {
            days.push_back({day_start, previous});
            day_start = event.t;
        }
        previous = event.t;
    }
    days.push_back({day_start, previous});

    std::map<std::string, CommunityId> class_ids;
    for (NodeId u = 0; u < stream.node_count(); ++u)
        if (stream.degree(u) > 0.0 && !stream.node_class(u).empty())
            class_ids.emplace(stream.node_class(u), 0);
    CommunityId next = 0;
    std::vector<std::string> labels;
    for (auto& [name, id] : class_ids) {
        id = next++;
        labels.push_back(name);
    }

    std::vector<SegmentEntry> entries;
    for (const auto& day : days) {
        for (NodeId u = 0; u < stream.node_count(); ++u) {
            if (stream.degree(u) <= 0.0 || stream.node_class(u).empty()) continue;
            entries.push_back({u, day, class_ids.at(stream.node_class(u))});
        }
    }
    return TemporalPartition::from_segments(stream.node_count(), std::move(entries),
                                            std::move(labels));
}

double round_sig(double value, int digits) {
    if (value == 0.0 || !std::isfinite(value)) return value;
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.*e", digits - 1, value);
    return std::strtod(buffer, nullptr);
}

std::string format_sig(double value, int digits) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.*g", digits, value);
    return buffer;
}

nlohmann::json manifest_json(const RunManifest& manifest) {
    nlohmann::json j;
    j["command"] = manifest.command;
    j["inputs"] = manifest.inputs;
    j["resolution_seconds"] = manifest.resolution_seconds;
    j["parameters"] = manifest.parameters;
    j["outputs"] = manifest.outputs;
    return j;
}

nlohmann::json quality_report_json(const QualityReport& report,
                                   const TemporalPartition& partition) {
    const double l = round_sig(report.l_term);
    const double e = round_sig(report.e_term);
    const double s = round_sig(report.s_term);
    nlohmann::json j;
    j["kind"] = std::string(to_string(report.kind));
    j["omega"] = round_sig(report.omega);
    j["q"] = l - e - s; // exact on the emitted terms
    j["l_term"] = l;
    j["e_term"] = e;
    j["s_term"] = s;
    j["rho"] = round_sig(report.rho);
    j["n_communities"] = report.per_community.size();
    auto communities = nlohmann::json::array();
    for (const auto& entry : report.per_community) {
        communities.push_back({
            {"community", partition.label(entry.community)},
            {"internal_raw", round_sig(entry.internal_raw)},
            {"expectation_raw", round_sig(entry.expectation_raw)},
            {"contribution", round_sig(entry.contribution)},
        });
    }
    j["per_community"] = std::move(communities);
    return j;
}

nlohmann::json quality_report_json(const QualityReport& report,
                                   const TemporalPartition& partition,
                                   const RunManifest& manifest) {
    auto j = quality_report_json(report, partition);
    j["manifest"] = manifest_json(manifest);
    return j;
}

nlohmann::json property_check_json(const PropertyCheck& check, bool expected) {
    return {
        {"name", check.name},
        {"passed", check.passed},
        {"expected", expected},
        {"deviates", check.passed != expected},
        {"q_reference", round_sig(check.reference)},
        {"q_alternative", round_sig(check.alternative)},
    };
}

} // namespace lmod::io
