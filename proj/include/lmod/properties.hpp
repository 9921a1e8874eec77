#pragma once

#include <cstdint>
#include <span>

#include "lmod/linkstream.hpp"
#include "lmod/partition.hpp"
#include "lmod/quality.hpp"

namespace lmod {

// A quality axiom probed on a fixed pair of competing partitions.
struct PropertyCheck {
    std::string name;
    bool passed = false;
    double reference = 0.0;   // q of the configuration the axiom prefers
    double alternative = 0.0; // q of the competing configuration
};

struct PropertyReport {
    ExpectationKind kind = ExpectationKind::MM;
    double omega = 1.0;
    PropertyCheck smoothness;   // continuous affiliation beats a needless split
    PropertyCheck topochrone;   // splitting along topochrone components beats a merge
    PropertyCheck aggregation;  // q survives rewriting onto coarser tick scales
};

// What each axiom should report for a given scoring configuration:
// smoothness holds only with omega > 0, the topochrone incentive is lost
// under the co-membership null model, aggregation independence always holds.
struct ExpectedProperties {
    bool smoothness = false;
    bool topochrone = false;
    bool aggregation = false;
};
ExpectedProperties expected_properties(ExpectationKind kind, double omega);

// A stream with a favored partition and a competing one.
struct Scenario {
    LinkStream stream;
    TemporalPartition favored;
    TemporalPartition alternative;
};

// Two node pairs chatting in parallel on ticks 0..3. Favored: one community
// per pair over the whole span. Alternative: the same communities split at
// tick 2 for no structural reason.
Scenario smoothness_scenario();

// Pair (0, 1) meets at tick 0, pair (2, 3) at tick 1; the two halves share
// no node and no tick, so they form distinct topochrone components.
// Favored: two communities along those components. Alternative: one merged
// community covering both halves.
Scenario topochrone_scenario();

PropertyCheck check_smoothness_incentive(ExpectationKind kind, double omega);
PropertyCheck check_topochrone(ExpectationKind kind, double omega);

// Rewrites stream and partition at each window size and compares q against
// the base scale. Every window must divide the affiliation boundaries.
PropertyCheck check_aggregation_independence(const LinkStream& stream,
                                             const TemporalPartition& partition,
                                             ExpectationKind kind, double omega,
                                             std::span<const Tick> windows,
                                             double tolerance = 1e-9);

PropertyReport evaluate_properties(ExpectationKind kind, double omega);

// max - min of multislice modularity across slicing windows on the
// smoothness scenario; a positive spread shows the slicing dependence that
// the stream-native score avoids.
double ms_aggregation_spread(double omega, std::span<const Tick> windows);

// Uniform random interactions over node pairs and ticks; weights are 1 by
// default or drawn from [0.5, 2.5) when weighted.
LinkStream random_stream(std::size_t n_nodes, Tick n_ticks, std::size_t n_events,
                         std::uint64_t seed, bool weighted = false);

// Per-node Markov affiliations: at each tick a segment ends with probability
// churn and the node moves to a different community; a tenth of the moves
// lead to an unaffiliated gap (suppressed when churn is 1 so that maximal
// churn yields gap-free partitions).
TemporalPartition random_partition(const LinkStream& stream, std::size_t n_communities,
                                   double churn, std::uint64_t seed);

} // namespace lmod
