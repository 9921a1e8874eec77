#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numeric>
#include <vector>

#include "lmod/detection.hpp"
#include "lmod/errors.hpp"
#include "lmod/properties.hpp"
#include "lmod/quality.hpp"
#include "testutil.hpp"

using namespace lmod;

namespace {

StaticGraph two_triangles(Weight bridge = 0.0) {
    std::vector<StaticGraph::Edge> edges{
        {0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0},
        {3, 4, 1.0}, {4, 5, 1.0}, {3, 5, 1.0},
    };
    if (bridge > 0.0) edges.push_back({2, 3, bridge});
    return StaticGraph(6, std::move(edges));
}

std::vector<CommunityId> singletons(std::size_t n) {
    std::vector<CommunityId> out(n);
    std::iota(out.begin(), out.end(), CommunityId{0});
    return out;
}

} // namespace

TEST_CASE("louvain groups obvious static structure") {
    SUBCASE("disconnected triangles") {
        const auto labels = louvain_static(two_triangles(), /*seed=*/0);
        CHECK(labels[0] == labels[1]);
        CHECK(labels[1] == labels[2]);
        CHECK(labels[3] == labels[4]);
        CHECK(labels[4] == labels[5]);
        CHECK(labels[0] != labels[3]);
    }
    SUBCASE("a weak bridge does not fuse the triangles") {
        const auto labels = louvain_static(two_triangles(0.5), /*seed=*/1);
        CHECK(labels[0] == labels[2]);
        CHECK(labels[3] == labels[5]);
        CHECK(labels[0] != labels[3]);
    }
    SUBCASE("a complete graph collapses into one community") {
        std::vector<StaticGraph::Edge> edges;
        for (NodeId u = 0; u < 4; ++u)
            for (NodeId v = u + 1; v < 4; ++v) edges.push_back({u, v, 1.0});
        const auto labels = louvain_static(StaticGraph(4, std::move(edges)), /*seed=*/7);
        CHECK(labels == std::vector<CommunityId>(4, labels[0]));
    }
    SUBCASE("a single edge joins its endpoints") {
        const auto labels = louvain_static(StaticGraph(2, {{0, 1, 1.0}}), /*seed=*/0);
        CHECK(labels[0] == labels[1]);
    }
    SUBCASE("an empty graph keeps everyone apart") {
        const auto labels = louvain_static(StaticGraph(3, {}), /*seed=*/0);
        CHECK(labels == singletons(3));
    }
}

TEST_CASE("louvain is deterministic and never loses to singletons") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto stream = random_stream(10, 6, 40, seed);
        const auto graph = stream.slice_into_snapshots(6).windows[0].graph;

        const auto first = louvain_static(graph, seed);
        const auto second = louvain_static(graph, seed);
        CHECK(first == second);

        CAPTURE(seed);
        CHECK(static_modularity(graph, first) >=
              static_modularity(graph, singletons(graph.node_count())) - 1e-12);
    }
}

TEST_CASE("snapshot detection recovers parallel pairs") {
    DetectionConfig config;
    config.window_ticks = 1;
    config.jaccard_threshold = 0.5;

    const auto stream = fixtures::f3();
    const auto partition = detect_ns(stream, config);

    REQUIRE(partition.community_count() == 2);
    for (NodeId u = 0; u < 4; ++u) {
        REQUIRE(partition.segments(u).size() == 1);
        CHECK(partition.segments(u)[0].span == TickInterval{0, 3});
    }
    CHECK(partition.membership_at(0, 0) == partition.membership_at(1, 3));
    CHECK(partition.membership_at(0, 0) != partition.membership_at(2, 0));
    CHECK(l_modularity(stream, partition, ExpectationKind::MM).q ==
          doctest::Approx(0.5).epsilon(1e-12));

    SUBCASE("wider windows reach the same structure") {
        config.window_ticks = 2;
        const auto coarse = detect_ns(stream, config);
        CHECK(coarse.community_count() == 2);
        CHECK(coarse.segments(0)[0].span == TickInterval{0, 3});
    }
}

TEST_CASE("an empty snapshot breaks label chains") {
    LinkStreamBuilder builder;
    builder.domain(0, 2);
    builder.add("a", "b", 0).add("a", "b", 2);
    const auto stream = builder.build();

    DetectionConfig config;
    config.window_ticks = 1;
    const auto partition = detect_ns(stream, config);

    CHECK(partition.community_count() == 2); // same pair, fresh label after the silence
    CHECK(partition.switch_count(0) == 1);
    CHECK(partition.membership_at(0, 1) == std::nullopt);
}

TEST_CASE("the jaccard threshold decides whether drifting groups keep their label") {
    LinkStreamBuilder builder;
    builder.add("a", "b", 0).add("b", "c", 0).add("a", "c", 0);
    builder.add("a", "b", 1).add("b", "d", 1).add("a", "d", 1);
    const auto stream = builder.build();

    DetectionConfig config;
    config.window_ticks = 1;

    config.jaccard_threshold = 0.3; // overlap 2/4 qualifies
    CHECK(detect_ns(stream, config).community_count() == 1);

    config.jaccard_threshold = 0.9; // overlap 2/4 does not
    const auto strict = detect_ns(stream, config);
    CHECK(strict.community_count() == 2);
    CHECK(strict.membership_at(stream.node("a"), 0) != strict.membership_at(stream.node("a"), 1));
}

TEST_CASE("snapshot detection yields valid deterministic partitions") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        const auto stream = random_stream(9, 10, 45, seed);
        DetectionConfig config;
        config.window_ticks = 2;
        config.seed = seed;

        const auto partition = detect_ns(stream, config);
        CAPTURE(seed);
        CHECK(validate(partition, stream).empty());

        const auto again = detect_ns(stream, config);
        CHECK(partition.all_segments().size() == again.all_segments().size());
        CHECK(partition.total_switch_count() == again.total_switch_count());
    }
}

TEST_CASE("greedy refinement splits a community stitched across components") {
    const auto stream = fixtures::f2();
    DetectionConfig config;
    config.kind = ExpectationKind::MM;
    config.omega = 1.0;

    const auto refined = detect_greedy_lm(stream, fixtures::f2_merged(), config);
    CHECK(l_modularity(stream, refined, config.kind, config.omega).q ==
          doctest::Approx(0.75).epsilon(1e-12));
    CHECK(refined.community_count() == 2);
    CHECK(refined.membership_at(0, 0) != refined.membership_at(2, 1));
}

TEST_CASE("greedy refinement merges singleton runs into pair communities") {
    const auto stream = fixtures::f1();
    const auto start = TemporalPartition::from_segments(4, {
        {0, {0, 1}, 0}, {1, {0, 1}, 1}, {2, {0, 1}, 2}, {3, {0, 1}, 3},
    });
    DetectionConfig config;

    const auto refined = detect_greedy_lm(stream, start, config);
    CHECK(refined.community_count() == 2);
    CHECK(refined.membership_at(0, 0) == refined.membership_at(1, 1));
    CHECK(refined.membership_at(2, 0) == refined.membership_at(3, 1));
    CHECK(l_modularity(stream, refined, config.kind, config.omega).q ==
          doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("greedy refinement drops affiliations that only cost expectation") {
    const auto stream = fixtures::f1();
    // c sits in the a-b community without ever meeting a or b; d is out.
    const auto start = TemporalPartition::from_segments(4, {
        {0, {0, 1}, 0}, {1, {0, 1}, 0}, {2, {0, 1}, 0},
    });
    DetectionConfig config;

    const auto refined = detect_greedy_lm(stream, start, config);
    CHECK(refined.segments(2).empty());
    CHECK(l_modularity(stream, refined, config.kind, config.omega).q ==
          doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("greedy refinement is monotone and stabilizes") {
    DetectionConfig config;
    config.window_ticks = 2;

    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        const auto stream = random_stream(8, 8, 35, seed);
        config.seed = seed;
        const auto initial = detect_ns(stream, config);
        const auto refined = detect_greedy_lm(stream, initial, config);

        const double before = l_modularity(stream, initial, config.kind, config.omega).q;
        const double after = l_modularity(stream, refined, config.kind, config.omega).q;
        CAPTURE(seed);
        CHECK(after >= before - 1e-12);
        CHECK(validate(refined, stream).empty());

        // a second pass finds nothing left to improve
        const auto again = detect_greedy_lm(stream, refined, config);
        CHECK(l_modularity(stream, again, config.kind, config.omega).q ==
              doctest::Approx(after).epsilon(1e-12));
    }
}
