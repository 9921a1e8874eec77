#include "lmod/partition.hpp"

#include <algorithm>
#include <charconv>

#include "lmod/errors.hpp"

namespace lmod {
namespace {

std::string segment_text(NodeId u, const TickInterval& span) {
    return "node " + std::to_string(u) + " over [" + std::to_string(span.start) + ", " +
           std::to_string(span.end) + "]";
}

} // namespace

TemporalPartition TemporalPartition::from_segments(std::size_t n_nodes,
                                                   std::vector<SegmentEntry> entries,
                                                   std::vector<std::string> labels) {
    TemporalPartition p;
    p.segments_.resize(n_nodes);

    for (const auto& entry : entries) {
        if (entry.node >= n_nodes)
            throw ValidationError("segment references unknown node " + std::to_string(entry.node));
        if (entry.span.start > entry.span.end)
            throw ValidationError("empty interval for " + segment_text(entry.node, entry.span));
        if (entry.community == kNoCommunity)
            throw ValidationError("reserved community id used for " +
                                  segment_text(entry.node, entry.span));
    }

    std::sort(entries.begin(), entries.end(), [](const SegmentEntry& a, const SegmentEntry& b) {
        if (a.node != b.node) return a.node < b.node;
        if (a.span.start != b.span.start) return a.span.start < b.span.start;
        return a.span.end < b.span.end;
    });

    for (std::size_t i = 0; i < entries.size(); ++i) {
        const auto& entry = entries[i];
        auto& runs = p.segments_[entry.node];
        if (!runs.empty()) {
            auto& last = runs.back();
            if (entry.span.start <= last.span.end)
                throw ValidationError("overlapping affiliations for " +
                                      segment_text(entry.node, entry.span));
            if (entry.span.start == last.span.end + 1 && entry.community == last.community) {
                last.span.end = entry.span.end;
                continue;
            }
        }
        runs.push_back({entry.span, entry.community});
    }

    for (NodeId u = 0; u < n_nodes; ++u) {
        for (const auto& seg : p.segments_[u])
            p.by_community_[seg.community].segments.emplace_back(u, seg.span);
    }
    for (auto& [c, index] : p.by_community_) {
        p.community_ids_.push_back(c);
        std::sort(index.segments.begin(), index.segments.end(),
                  [](const auto& a, const auto& b) {
                      if (a.second.start != b.second.start) return a.second.start < b.second.start;
                      return a.first < b.first;
                  });
        std::vector<TickInterval> spans;
        spans.reserve(index.segments.size());
        std::map<NodeId, Tick> durations;
        for (const auto& [u, span] : index.segments) {
            spans.push_back(span);
            durations[u] += span.length();
        }
        index.durations.assign(durations.begin(), durations.end());
        index.span_measure = covered_length(merge_union(std::move(spans)));
    }

    for (CommunityId c : p.community_ids_) p.labels_[c] = std::to_string(c);
    for (std::size_t c = 0; c < labels.size(); ++c) {
        if (labels[c].empty()) continue;
        auto it = p.labels_.find(static_cast<CommunityId>(c));
        if (it != p.labels_.end()) it->second = labels[c];
    }
    return p;
}

TemporalPartition TemporalPartition::from_static(std::span<const CommunityId> membership,
                                                 TickInterval span,
                                                 std::vector<std::string> labels) {
    std::vector<SegmentEntry> entries;
    entries.reserve(membership.size());
    for (NodeId u = 0; u < membership.size(); ++u) {
        if (membership[u] == kNoCommunity) continue;
        entries.push_back({u, span, membership[u]});
    }
    return from_segments(membership.size(), std::move(entries), std::move(labels));
}

std::span<const AffiliationSegment> TemporalPartition::segments(NodeId u) const {
    if (u >= segments_.size())
        throw ValidationError("unknown node " + std::to_string(u));
    return segments_[u];
}

std::vector<SegmentEntry> TemporalPartition::all_segments() const {
    std::vector<SegmentEntry> out;
    for (NodeId u = 0; u < segments_.size(); ++u)
        for (const auto& seg : segments_[u]) out.push_back({u, seg.span, seg.community});
    return out;
}

const std::string& TemporalPartition::label(CommunityId c) const {
    auto it = labels_.find(c);
    if (it == labels_.end())
        throw ValidationError("unknown community " + std::to_string(c));
    return it->second;
}

std::optional<CommunityId> TemporalPartition::find_community(std::string_view label) const {
    for (const auto& [c, name] : labels_)
        if (name == label) return c;
    return std::nullopt;
}

std::optional<CommunityId> TemporalPartition::membership_at(NodeId u, Tick t) const {
    auto runs = segments(u);
    auto it = std::upper_bound(runs.begin(), runs.end(), t,
                               [](Tick value, const AffiliationSegment& seg) {
                                   return value < seg.span.start;
                               });
    if (it == runs.begin()) return std::nullopt;
    --it;
    if (t <= it->span.end) return it->community;
    return std::nullopt;
}

Tick TemporalPartition::duration_in(NodeId u, CommunityId c) const {
    Tick total = 0;
    for (const auto& seg : segments(u))
        if (seg.community == c) total += seg.span.length();
    return total;
}

Tick TemporalPartition::co_duration(NodeId u, NodeId v, CommunityId c) const {
    std::vector<TickInterval> lhs, rhs;
    for (const auto& seg : segments(u))
        if (seg.community == c) lhs.push_back(seg.span);
    for (const auto& seg : segments(v))
        if (seg.community == c) rhs.push_back(seg.span);
    return intersection_length(lhs, rhs);
}

const TemporalPartition::CommunityIndex& TemporalPartition::community_index(CommunityId c) const {
    auto it = by_community_.find(c);
    if (it == by_community_.end())
        throw ValidationError("unknown community " + std::to_string(c));
    return it->second;
}

Tick TemporalPartition::community_span(CommunityId c) const {
    return community_index(c).span_measure;
}

std::vector<NodeId> TemporalPartition::visitors(CommunityId c) const {
    std::vector<NodeId> out;
    for (const auto& [u, duration] : community_index(c).durations) out.push_back(u);
    return out;
}

int TemporalPartition::switch_count(NodeId u) const {
    auto runs = segments(u);
    return runs.empty() ? 0 : static_cast<int>(runs.size()) - 1;
}

long TemporalPartition::total_switch_count() const {
    long total = 0;
    for (NodeId u = 0; u < segments_.size(); ++u) total += switch_count(u);
    return total;
}

std::span<const std::pair<NodeId, TickInterval>>
TemporalPartition::community_segments(CommunityId c) const {
    return community_index(c).segments;
}

std::span<const std::pair<NodeId, Tick>>
TemporalPartition::visitor_durations(CommunityId c) const {
    return community_index(c).durations;
}

double discontinuity(const TemporalPartition& partition, const LinkStream& stream) {
    if (stream.total_weight() <= 0)
        throw ValidationError("discontinuity undefined for an empty stream");
    return static_cast<double>(partition.total_switch_count()) / (2.0 * stream.total_weight());
}

std::vector<std::string> validate(const TemporalPartition& partition, const LinkStream& stream) {
    std::vector<std::string> problems;
    if (partition.node_count() != stream.node_count())
        problems.push_back("partition covers " + std::to_string(partition.node_count()) +
                           " nodes, stream has " + std::to_string(stream.node_count()));
    const auto domain = stream.domain();
    const std::size_t n = std::min<std::size_t>(partition.node_count(), stream.node_count());
    for (NodeId u = 0; u < n; ++u) {
        for (const auto& seg : partition.segments(u)) {
            if (seg.span.start < domain.t_min || seg.span.end > domain.t_max)
                problems.push_back("affiliation outside the stream domain for " +
                                   segment_text(u, seg.span));
        }
    }
    for (CommunityId c : partition.community_ids()) {
        if (partition.visitors(c).empty())
            problems.push_back("community " + partition.label(c) + " has no visitors");
    }
    return problems;
}

TemporalPartition aggregate_partition(const TemporalPartition& partition,
                                      const TimeDomain& source_domain, Tick window_ticks) {
    if (window_ticks <= 0)
        throw ValidationError("aggregation window must be positive");
    std::vector<SegmentEntry> entries;
    CommunityId max_id = 0;
    for (const auto& entry : partition.all_segments()) {
        const Tick lo = entry.span.start - source_domain.t_min;
        const Tick hi = entry.span.end - source_domain.t_min;
        if (lo % window_ticks != 0)
            throw ValidationError("affiliation start not aligned to the aggregation grid for " +
                                  segment_text(entry.node, entry.span));
        if ((hi + 1) % window_ticks != 0 && entry.span.end != source_domain.t_max)
            throw ValidationError("affiliation end not aligned to the aggregation grid for " +
                                  segment_text(entry.node, entry.span));
        entries.push_back({entry.node, {lo / window_ticks, hi / window_ticks}, entry.community});
        max_id = std::max(max_id, entry.community);
    }
    std::vector<std::string> labels(entries.empty() ? 0 : max_id + 1);
    for (CommunityId c : partition.community_ids()) labels[c] = partition.label(c);
    return TemporalPartition::from_segments(partition.node_count(), std::move(entries),
                                            std::move(labels));
}

} // namespace lmod
