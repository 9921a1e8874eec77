#include "lmod/properties.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "lmod/errors.hpp"

namespace lmod {
namespace {

// A score gap below this counts as a tie, which fails a strict axiom.
constexpr double kStrictly = 1e-9;

double unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace

ExpectedProperties expected_properties(ExpectationKind kind, double omega) {
    return {omega > 0.0, kind != ExpectationKind::CM, true};
}

Scenario smoothness_scenario() {
    LinkStreamBuilder builder;
    for (const char* name : {"a", "b", "c", "d"}) builder.add_node(name);
    for (Tick t = 0; t < 4; ++t) {
        builder.add(NodeId{0}, NodeId{1}, t);
        builder.add(NodeId{2}, NodeId{3}, t);
    }
    auto stream = builder.build();

    auto favored = TemporalPartition::from_segments(4, {
        {0, {0, 3}, 0}, {1, {0, 3}, 0},
        {2, {0, 3}, 1}, {3, {0, 3}, 1},
    });
    auto alternative = TemporalPartition::from_segments(4, {
        {0, {0, 1}, 0}, {1, {0, 1}, 0}, {0, {2, 3}, 2}, {1, {2, 3}, 2},
        {2, {0, 1}, 1}, {3, {0, 1}, 1}, {2, {2, 3}, 3}, {3, {2, 3}, 3},
    });
    return {std::move(stream), std::move(favored), std::move(alternative)};
}

Scenario topochrone_scenario() {
    LinkStreamBuilder builder;
    for (const char* name : {"a", "b", "c", "d"}) builder.add_node(name);
    builder.add(NodeId{0}, NodeId{1}, 0);
    builder.add(NodeId{2}, NodeId{3}, 1);
    auto stream = builder.build();

    auto favored = TemporalPartition::from_segments(4, {
        {0, {0, 0}, 0}, {1, {0, 0}, 0},
        {2, {1, 1}, 1}, {3, {1, 1}, 1},
    });
    auto alternative = TemporalPartition::from_segments(4, {
        {0, {0, 0}, 0}, {1, {0, 0}, 0},
        {2, {1, 1}, 0}, {3, {1, 1}, 0},
    });
    return {std::move(stream), std::move(favored), std::move(alternative)};
}

PropertyCheck check_smoothness_incentive(ExpectationKind kind, double omega) {
    const auto scenario = smoothness_scenario();
    PropertyCheck check;
    check.name = "smoothness-incentive";
    check.reference = l_modularity(scenario.stream, scenario.favored, kind, omega).q;
    check.alternative = l_modularity(scenario.stream, scenario.alternative, kind, omega).q;
    check.passed = check.reference > check.alternative + kStrictly;
    return check;
}

PropertyCheck check_topochrone(ExpectationKind kind, double omega) {
    const auto scenario = topochrone_scenario();
    PropertyCheck check;
    check.name = "topochrone-robustness";
    check.reference = l_modularity(scenario.stream, scenario.favored, kind, omega).q;
    check.alternative = l_modularity(scenario.stream, scenario.alternative, kind, omega).q;
    check.passed = check.reference > check.alternative + kStrictly;
    return check;
}

PropertyCheck check_aggregation_independence(const LinkStream& stream,
                                             const TemporalPartition& partition,
                                             ExpectationKind kind, double omega,
                                             std::span<const Tick> windows, double tolerance) {
    PropertyCheck check;
    check.name = "aggregation-independence";
    check.reference = l_modularity(stream, partition, kind, omega).q;
    check.alternative = check.reference;
    check.passed = true;
    double worst = 0.0;
    for (Tick window : windows) {
        const auto coarse_stream = stream.aggregate(window);
        const auto coarse_partition = aggregate_partition(partition, stream.domain(), window);
        const double q = l_modularity(coarse_stream, coarse_partition, kind, omega).q;
        if (std::abs(q - check.reference) > worst) {
            worst = std::abs(q - check.reference);
            check.alternative = q;
        }
    }
    check.passed = worst <= tolerance;
    return check;
}

PropertyReport evaluate_properties(ExpectationKind kind, double omega) {
    PropertyReport report;
    report.kind = kind;
    report.omega = omega;
    report.smoothness = check_smoothness_incentive(kind, omega);
    report.topochrone = check_topochrone(kind, omega);

    const auto scenario = smoothness_scenario();
    const Tick whole[] = {2, 4};
    report.aggregation =
        check_aggregation_independence(scenario.stream, scenario.favored, kind, omega, whole);
    const Tick halves[] = {2};
    const auto split_check = check_aggregation_independence(scenario.stream, scenario.alternative,
                                                            kind, omega, halves);
    if (!split_check.passed) report.aggregation = split_check;
    return report;
}

double ms_aggregation_spread(double omega, std::span<const Tick> windows) {
    const auto scenario = smoothness_scenario();
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (Tick window : windows) {
        const auto snapshots = scenario.stream.slice_into_snapshots(window);
        const auto memberships = slice_membership_from(scenario.favored, snapshots);
        const double q = ms_modularity(snapshots, memberships, omega);
        lo = std::min(lo, q);
        hi = std::max(hi, q);
    }
    if (lo > hi) return 0.0;
    return hi - lo;
}

LinkStream random_stream(std::size_t n_nodes, Tick n_ticks, std::size_t n_events,
                         std::uint64_t seed, bool weighted) {
    if (n_nodes < 2 || n_ticks < 1 || n_events < 1)
        throw ValidationError("random stream needs at least two nodes, one tick and one event");
    std::mt19937_64 rng(seed);
    LinkStreamBuilder builder;
    builder.domain(0, n_ticks - 1);
    for (std::size_t i = 0; i < n_nodes; ++i) builder.add_node("n" + std::to_string(i));
    for (std::size_t i = 0; i < n_events; ++i) {
        const NodeId u = static_cast<NodeId>(rng() % n_nodes);
        NodeId v = static_cast<NodeId>(rng() % (n_nodes - 1));
        if (v >= u) ++v;
        const Tick t = static_cast<Tick>(rng() % static_cast<std::uint64_t>(n_ticks));
        const Weight w = weighted ? 0.5 + 2.0 * unit(rng) : 1.0;
        builder.add(u, v, t, w);
    }
    return builder.build();
}

TemporalPartition random_partition(const LinkStream& stream, std::size_t n_communities,
                                   double churn, std::uint64_t seed) {
    if (n_communities < 1)
        throw ValidationError("random partition needs at least one community");
    if (churn < 0.0 || churn > 1.0)
        throw ValidationError("churn must lie in [0, 1]");
    if (churn == 1.0 && n_communities < 2)
        throw ValidationError("full churn needs a second community to switch into");
    std::mt19937_64 rng(seed);
    const auto domain = stream.domain();
    const bool gaps_allowed = churn < 1.0;

    auto pick_other = [&](CommunityId current) {
        if (gaps_allowed && current != kNoCommunity && unit(rng) < 0.1) return kNoCommunity;
        if (n_communities == 1) return CommunityId{0};
        CommunityId next = static_cast<CommunityId>(rng() % n_communities);
        while (next == current) next = static_cast<CommunityId>(rng() % n_communities);
        return next;
    };

    std::vector<SegmentEntry> entries;
    for (NodeId u = 0; u < stream.node_count(); ++u) {
        CommunityId current = gaps_allowed && unit(rng) < 0.1
                                  ? kNoCommunity
                                  : static_cast<CommunityId>(rng() % n_communities);
        Tick segment_start = domain.t_min;
        for (Tick t = domain.t_min + 1; t <= domain.t_max; ++t) {
            if (unit(rng) >= churn) continue;
            if (current != kNoCommunity)
                entries.push_back({u, {segment_start, t - 1}, current});
            current = pick_other(current);
            segment_start = t;
        }
        if (current != kNoCommunity)
            entries.push_back({u, {segment_start, domain.t_max}, current});
    }
    return TemporalPartition::from_segments(stream.node_count(), std::move(entries));
}

} // namespace lmod
