#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "lmod/linkstream.hpp"
#include "lmod/partition.hpp"

// Shared handmade fixtures. Values asserted against them were derived by
// hand or by the brute-force oracle before the factored paths were written.
namespace fixtures {

using namespace lmod;

// Two node pairs interacting at ticks 0 and 1: m = 4, every degree 2.
inline LinkStream f1() {
    LinkStreamBuilder builder;
    for (const char* name : {"a", "b", "c", "d"}) builder.add_node(name);
    builder.add(NodeId{0}, NodeId{1}, 0).add(NodeId{0}, NodeId{1}, 1);
    builder.add(NodeId{2}, NodeId{3}, 0).add(NodeId{2}, NodeId{3}, 1);
    return builder.build();
}

// One community per pair over the whole F1 domain.
inline TemporalPartition p1() {
    return TemporalPartition::from_segments(4, {
        {0, {0, 1}, 0}, {1, {0, 1}, 0},
        {2, {0, 1}, 1}, {3, {0, 1}, 1},
    });
}

// Two events with disjoint nodes and disjoint ticks: two topochrone
// components.
inline LinkStream f2() {
    LinkStreamBuilder builder;
    for (const char* name : {"a", "b", "c", "d"}) builder.add_node(name);
    builder.add(NodeId{0}, NodeId{1}, 0);
    builder.add(NodeId{2}, NodeId{3}, 1);
    return builder.build();
}

// One community stitched across both F2 components.
inline TemporalPartition f2_merged() {
    return TemporalPartition::from_segments(4, {
        {0, {0, 0}, 0}, {1, {0, 0}, 0},
        {2, {1, 1}, 0}, {3, {1, 1}, 0},
    });
}

// The same node-time pairs split along the components.
inline TemporalPartition f2_split() {
    return TemporalPartition::from_segments(4, {
        {0, {0, 0}, 0}, {1, {0, 0}, 0},
        {2, {1, 1}, 1}, {3, {1, 1}, 1},
    });
}

// F1 extended to ticks 0..3: m = 8, every degree 4.
inline LinkStream f3() {
    LinkStreamBuilder builder;
    for (const char* name : {"a", "b", "c", "d"}) builder.add_node(name);
    for (Tick t = 0; t < 4; ++t) {
        builder.add(NodeId{0}, NodeId{1}, t);
        builder.add(NodeId{2}, NodeId{3}, t);
    }
    return builder.build();
}

// One community per pair over the whole F3 domain.
inline TemporalPartition f3_continuous() {
    return TemporalPartition::from_segments(4, {
        {0, {0, 3}, 0}, {1, {0, 3}, 0},
        {2, {0, 3}, 1}, {3, {0, 3}, 1},
    });
}

// The same communities cut at tick 2 for no structural reason (4 switches).
inline TemporalPartition f3_split() {
    return TemporalPartition::from_segments(4, {
        {0, {0, 1}, 0}, {1, {0, 1}, 0}, {0, {2, 3}, 2}, {1, {2, 3}, 2},
        {2, {0, 1}, 1}, {3, {0, 1}, 1}, {2, {2, 3}, 3}, {3, {2, 3}, 3},
    });
}

// Everybody in one community over the stream's whole domain.
inline TemporalPartition whole(const LinkStream& stream) {
    std::vector<CommunityId> everyone(stream.node_count(), 0);
    return TemporalPartition::from_static(everyone,
                                          {stream.domain().t_min, stream.domain().t_max});
}

// Community choices drawn per `block_ticks`-sized block, so the partition is
// constant within any window dividing the block size. kNoCommunity blocks
// leave gaps.
inline TemporalPartition block_partition(const LinkStream& stream, std::size_t n_communities,
                                         Tick block_ticks, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const auto domain = stream.domain();
    std::vector<SegmentEntry> entries;
    for (NodeId u = 0; u < stream.node_count(); ++u) {
        CommunityId previous = kNoCommunity;
        for (Tick start = domain.t_min; start <= domain.t_max; start += block_ticks) {
            const Tick end = std::min<Tick>(start + block_ticks - 1, domain.t_max);
            CommunityId c;
            const auto roll = rng() % 10;
            if (roll < 2)
                c = kNoCommunity;
            else if (roll < 6 && previous != kNoCommunity)
                c = previous; // persist, so adjacent blocks merge sometimes
            else
                c = static_cast<CommunityId>(rng() % n_communities);
            if (c != kNoCommunity) entries.push_back({u, {start, end}, c});
            previous = c;
        }
    }
    return TemporalPartition::from_segments(stream.node_count(), std::move(entries));
}

} // namespace fixtures
