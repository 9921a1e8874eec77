#pragma once

#include <cstdint>
#include <vector>

#include "lmod/graph.hpp"
#include "lmod/linkstream.hpp"
#include "lmod/partition.hpp"
#include "lmod/quality.hpp"

namespace lmod {

struct DetectionConfig {
    Tick window_ticks = 1;          // slicing window for the snapshot stage
    double jaccard_threshold = 0.3; // minimum overlap to carry a label across slices
    std::uint64_t seed = 0;
    int max_iterations = 256;       // cap on local-move passes / refinement rounds
    ExpectationKind kind = ExpectationKind::MM;
    double omega = 1.0;
};

// Seeded Louvain on one static graph. Node visit order is shuffled once per
// level from the seed; a node moves only on a strict gain, so the result is
// reproducible for a fixed seed.
std::vector<CommunityId> louvain_static(const StaticGraph& graph, std::uint64_t seed,
                                        int max_iterations = 256);

// Snapshot pipeline: slice the stream, run Louvain per snapshot (inactive
// nodes stay unaffiliated), then chain labels across successive slices by
// greedy best-Jaccard matching of node sets (>= jaccard_threshold, each
// community matched at most once). Unmatched communities start fresh labels;
// an empty snapshot breaks every chain.
TemporalPartition detect_ns(const LinkStream& stream, const DetectionConfig& config);

// Steepest-ascent refinement of an initial temporal partition under
// l_modularity(kind, omega). Moves: reassign one affiliation run to another
// community (or drop it), merge two communities, split one community in two
// at a tick boundary. Stops when no move improves q by more than 1e-12.
TemporalPartition detect_greedy_lm(const LinkStream& stream, const TemporalPartition& initial,
                                   const DetectionConfig& config);

} // namespace lmod
