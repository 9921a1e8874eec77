#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lmod/interval.hpp"
#include "lmod/linkstream.hpp"

namespace lmod {

using CommunityId = std::uint32_t;
inline constexpr CommunityId kNoCommunity = std::numeric_limits<CommunityId>::max();

struct AffiliationSegment {
    TickInterval span;
    CommunityId community = kNoCommunity;

    friend bool operator==(const AffiliationSegment&, const AffiliationSegment&) = default;
};

// Raw input row for building a partition.
struct SegmentEntry {
    NodeId node = 0;
    TickInterval span;
    CommunityId community = 0;
};

// Per-node, non-overlapping interval affiliations. Canonical form: segments
// sorted by start, tick-adjacent same-community segments merged. Immutable
// after construction; queries are pure.
class TemporalPartition {
public:
    TemporalPartition() = default;

    // Canonicalizes the entries; throws ValidationError on overlapping
    // spans or degenerate intervals. `labels[c]` names community c (any id
    // without a label gets its decimal form).
    static TemporalPartition from_segments(std::size_t n_nodes, std::vector<SegmentEntry> entries,
                                           std::vector<std::string> labels = {});

    // Constant affiliation over one interval. kNoCommunity entries are
    // skipped.
    static TemporalPartition from_static(std::span<const CommunityId> membership,
                                         TickInterval span,
                                         std::vector<std::string> labels = {});

    std::size_t node_count() const { return segments_.size(); }
    std::span<const AffiliationSegment> segments(NodeId u) const;
    std::vector<SegmentEntry> all_segments() const;

    const std::vector<CommunityId>& community_ids() const { return community_ids_; }
    std::size_t community_count() const { return community_ids_.size(); }
    const std::string& label(CommunityId c) const;
    std::optional<CommunityId> find_community(std::string_view label) const;

    // The unique community covering (u, t), if any.
    std::optional<CommunityId> membership_at(NodeId u, Tick t) const;
    // |T_{u in C}|: ticks of u's segments labeled c.
    Tick duration_in(NodeId u, CommunityId c) const;
    // |T_{uv in C}|: ticks where u and v are simultaneously in c.
    Tick co_duration(NodeId u, NodeId v, CommunityId c) const;
    // |T_C|: measure of the union of all members' tick sets.
    Tick community_span(CommunityId c) const;
    // Nodes with positive duration in c; throws on unknown community.
    std::vector<NodeId> visitors(CommunityId c) const;

    // eta_u: number of maximal affiliation runs minus one, floored at 0.
    // A gap of unaffiliated ticks ends a run even if the node rejoins the
    // same community afterwards.
    int switch_count(NodeId u) const;
    long total_switch_count() const;

    // C-labeled (node, span) segments sorted by span start; used by the
    // factored expectation paths.
    std::span<const std::pair<NodeId, TickInterval>> community_segments(CommunityId c) const;
    // (node, |T_{u in C}|) for every visitor of c, sorted by node.
    std::span<const std::pair<NodeId, Tick>> visitor_durations(CommunityId c) const;

private:
    struct CommunityIndex {
        std::vector<std::pair<NodeId, TickInterval>> segments;
        std::vector<std::pair<NodeId, Tick>> durations;
        Tick span_measure = 0;
    };

    const CommunityIndex& community_index(CommunityId c) const;

    std::vector<std::vector<AffiliationSegment>> segments_; // per node
    std::vector<CommunityId> community_ids_;
    std::map<CommunityId, CommunityIndex> by_community_;
    std::map<CommunityId, std::string> labels_;
};

// rho = (1 / 2m) * sum of switch counts.
double discontinuity(const TemporalPartition& partition, const LinkStream& stream);

// Consistency report: out-of-domain intervals, node count mismatch,
// empty communities. Empty result means the partition is valid for the
// stream.
std::vector<std::string> validate(const TemporalPartition& partition, const LinkStream& stream);

// Rewrites a partition onto the tick scale of stream.aggregate(window).
// Every segment boundary must align with the window grid.
TemporalPartition aggregate_partition(const TemporalPartition& partition,
                                      const TimeDomain& source_domain, Tick window_ticks);

} // namespace lmod
