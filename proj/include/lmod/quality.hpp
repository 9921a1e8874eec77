#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "lmod/graph.hpp"
#include "lmod/linkstream.hpp"
#include "lmod/partition.hpp"

namespace lmod {

// Null model for the expected weight between two nodes inside a community.
//   CM: co-membership  -- pairs count only while both are members.
//   JM: joint-membership -- visitor pairs count over the whole community span.
//   MM: mean-membership  -- geometric mean of the two individual durations.
enum class ExpectationKind { CM, JM, MM };

std::string_view to_string(ExpectationKind kind);
ExpectationKind parse_kind(std::string_view text);

struct CommunityQuality {
    CommunityId community = 0;
    double internal_raw = 0.0;    // ordered internal weight, sum over (u, v) pairs
    double expectation_raw = 0.0; // ordered expected weight under the null model
    double contribution = 0.0;    // (internal_raw - expectation_raw) / 2m
};

struct QualityReport {
    ExpectationKind kind = ExpectationKind::MM;
    double omega = 1.0;
    double q = 0.0;
    double l_term = 0.0; // internal fraction
    double e_term = 0.0; // expected fraction
    double s_term = 0.0; // omega * rho
    double rho = 0.0;
    std::vector<CommunityQuality> per_community;
};

// Ordered internal weight of c: every event whose endpoints are both
// affiliated with c at its tick counts twice. The overload without a
// community sums over the whole partition (normalized form: divide by 2m).
double internal_count(const LinkStream& stream, const TemporalPartition& partition,
                      CommunityId c);
double internal_count(const LinkStream& stream, const TemporalPartition& partition);

// Ordered expected weight of c under the chosen null model, including the
// u = v diagonal pairs. Factored closed forms; see oracle_l_modularity for
// the unfactored sums. The overload without a community sums over the
// whole partition.
double expectation(const LinkStream& stream, const TemporalPartition& partition, CommunityId c,
                   ExpectationKind kind);
double expectation(const LinkStream& stream, const TemporalPartition& partition,
                   ExpectationKind kind);

// q = l - e - omega * rho. Throws ValidationError on an empty stream.
QualityReport l_modularity(const LinkStream& stream, const TemporalPartition& partition,
                           ExpectationKind kind, double omega = 1.0);

// Same quantity evaluated by brute force: expectation sums run over every
// ordered node pair, membership is re-derived tick by tick, and switch
// counts are recounted from the per-tick affiliation sequence. Meant as a
// cross-check for the factored paths; cost grows with |V|^2 |T|.
QualityReport oracle_l_modularity(const LinkStream& stream, const TemporalPartition& partition,
                                  ExpectationKind kind, double omega = 1.0);

// Newman modularity of a node membership on one static graph; entries equal
// to kNoCommunity take part in 2m but in no community sum.
double static_modularity(const StaticGraph& graph, std::span<const CommunityId> membership);

// Which inter-slice identity couplings exist in the multislice null model.
enum class CouplingMode {
    AllNodes,   // every vocabulary node is coupled between successive slices
    ActiveOnly, // only nodes with positive degree in both slices
};

// Multislice modularity with uniform resolution 1 and coupling strength
// omega between successive slices. memberships[s][u] gives the community of
// u in slice s (kNoCommunity: absent from every sum except 2 mu's edge part).
double ms_modularity(const SnapshotSequence& snapshots,
                     const std::vector<std::vector<CommunityId>>& memberships, double omega,
                     CouplingMode mode = CouplingMode::AllNodes);

// Per-slice memberships sampled from a partition at each window's first tick.
std::vector<std::vector<CommunityId>> slice_membership_from(const TemporalPartition& partition,
                                                            const SnapshotSequence& snapshots);

} // namespace lmod
