#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "lmod/interval.hpp"

namespace lmod {

using NodeId = std::uint32_t;
using Weight = double;

// Undirected weighted multigraph snapshot. Parallel edges coalesce into
// summed weights. Self-loop weight is stored as the diagonal adjacency
// value A_uu (so it counts twice in the node strength, the convention the
// configuration model expects); user-facing streams never produce
// self-loops, they only appear when Louvain coarsens a graph.
class StaticGraph {
public:
    struct Edge {
        NodeId u, v;
        Weight w;
    };

    StaticGraph() = default;
    StaticGraph(std::size_t n_nodes, std::vector<Edge> edges,
                std::vector<Weight> self_weights = {});

    std::size_t node_count() const { return strength_.size(); }
    std::span<const std::pair<NodeId, Weight>> neighbors(NodeId u) const {
        return {adjacency_[u].data(), adjacency_[u].size()};
    }
    // Diagonal adjacency value A_uu.
    Weight self_weight(NodeId u) const { return self_weight_[u]; }
    // Node strength k_u = sum of adjacent edge weights + A_uu.
    Weight strength(NodeId u) const { return strength_[u]; }
    // Total weight m, with self-loops counted once each.
    Weight total_weight() const { return total_weight_; }
    Weight edge_weight(NodeId u, NodeId v) const;
    bool empty() const { return total_weight_ == 0.0; }

private:
    std::vector<std::vector<std::pair<NodeId, Weight>>> adjacency_;
    std::vector<Weight> self_weight_;
    std::vector<Weight> strength_;
    Weight total_weight_ = 0.0;
};

struct TimeDomain {
    Tick t_min = 0;
    Tick t_max = 0;
    double tick_seconds = 1.0; // raw seconds represented by one tick

    Tick length() const { return t_max - t_min + 1; }
    bool contains(Tick t) const { return t_min <= t && t <= t_max; }
};

struct Snapshot {
    TickInterval span; // source ticks aggregated into this snapshot
    StaticGraph graph;
};

// Ordered static graphs tiling the source domain without overlap.
struct SnapshotSequence {
    std::vector<Snapshot> windows;
    TimeDomain source_domain;
    std::size_t node_count = 0;

    Weight total_weight() const;
};

} // namespace lmod
