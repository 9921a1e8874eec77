#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>

#include "lmod/errors.hpp"
#include "lmod/linkstream.hpp"
#include "lmod/properties.hpp"
#include "testutil.hpp"

using namespace lmod;

TEST_CASE("builder produces sorted coalesced events") {
    LinkStreamBuilder builder;
    builder.add("b", "a", 5);
    builder.add("a", "b", 5, 2.0); // duplicate triple, weights sum
    builder.add("c", "a", 3);

    const LinkStream stream = builder.build();
    REQUIRE(stream.events().size() == 2);
    CHECK(stream.events()[0].t == 3);
    CHECK(stream.events()[1].t == 5);
    // endpoints normalized to u < v
    for (const auto& ev : stream.events()) CHECK(ev.u < ev.v);
    CHECK(stream.events()[1].w == doctest::Approx(3.0));
    CHECK(stream.total_weight() == doctest::Approx(4.0));
    // inferred domain spans min..max event tick
    CHECK(stream.domain().t_min == 3);
    CHECK(stream.domain().t_max == 5);
}

TEST_CASE("degrees sum to twice the total weight") {
    const LinkStream stream = fixtures::f1();
    CHECK(stream.total_weight() == doctest::Approx(4.0));
    double degree_sum = 0.0;
    for (NodeId u = 0; u < stream.node_count(); ++u) {
        CHECK(stream.degree(u) == doctest::Approx(2.0));
        degree_sum += stream.degree(u);
    }
    CHECK(degree_sum == doctest::Approx(2.0 * stream.total_weight()));

    const LinkStream random = random_stream(9, 14, 60, /*seed=*/7, /*weighted=*/true);
    degree_sum = 0.0;
    for (NodeId u = 0; u < random.node_count(); ++u) degree_sum += random.degree(u);
    CHECK(degree_sum == doctest::Approx(2.0 * random.total_weight()).epsilon(1e-12));
}

TEST_CASE("node lookup by name") {
    const LinkStream stream = fixtures::f1();
    CHECK(stream.node("c") == NodeId{2});
    CHECK(stream.node_name(3) == "d");
    CHECK(stream.find_node("nope") == std::nullopt);
    CHECK_THROWS_AS((void)stream.node("nope"), ValidationError);
    CHECK_THROWS_AS((void)stream.node_name(99), ValidationError);
    CHECK_THROWS_AS((void)stream.degree(99), ValidationError);
}

TEST_CASE("builder rejects invalid events") {
    SUBCASE("self-interaction") {
        LinkStreamBuilder builder;
        builder.add("a", "a", 0);
        CHECK_THROWS_AS(builder.build(), ValidationError);
    }
    SUBCASE("non-positive weight") {
        LinkStreamBuilder builder;
        builder.add("a", "b", 0, 0.0);
        CHECK_THROWS_AS(builder.build(), ValidationError);
    }
    SUBCASE("negative weight") {
        LinkStreamBuilder builder;
        builder.add("a", "b", 0, -1.0);
        CHECK_THROWS_AS(builder.build(), ValidationError);
    }
    SUBCASE("event outside the declared domain") {
        LinkStreamBuilder builder;
        builder.domain(0, 3);
        builder.add("a", "b", 4);
        CHECK_THROWS_AS(builder.build(), ValidationError);
    }
    SUBCASE("undeclared endpoint id") {
        LinkStreamBuilder builder;
        builder.add_node("a");
        CHECK_THROWS_AS(builder.add(NodeId{0}, NodeId{1}, 0), ValidationError);
    }
    SUBCASE("no events and no declared domain") {
        LinkStreamBuilder builder;
        builder.add_node("a");
        CHECK_THROWS_AS(builder.build(), ValidationError);
    }
}

TEST_CASE("declared domain admits silent ticks") {
    LinkStreamBuilder builder;
    builder.domain(0, 9);
    builder.add("a", "b", 2);
    const LinkStream stream = builder.build();
    CHECK(stream.domain().length() == 10);
    CHECK(stream.total_weight() == doctest::Approx(1.0));
}

TEST_CASE("count_between sums matching event weights") {
    const LinkStream stream = fixtures::f1();
    const NodeId a = stream.node("a"), b = stream.node("b"), c = stream.node("c");

    const std::vector<TickInterval> whole{{0, 1}};
    CHECK(stream.count_between(a, b, whole) == doctest::Approx(2.0));
    CHECK(stream.count_between(b, a, whole) == doctest::Approx(2.0)); // symmetric
    CHECK(stream.count_between(a, c, whole) == doctest::Approx(0.0));

    const std::vector<TickInterval> first{{0, 0}};
    CHECK(stream.count_between(a, b, first) == doctest::Approx(1.0));
    CHECK(stream.count_between(a, b, {}) == doctest::Approx(0.0));
    CHECK_THROWS_AS((void)stream.count_between(a, NodeId{42}, whole), ValidationError);
}

TEST_CASE("count_between over all pairs on the whole domain recovers m") {
    const LinkStream stream = random_stream(8, 10, 45, /*seed=*/21, /*weighted=*/true);
    const std::vector<TickInterval> whole{{stream.domain().t_min, stream.domain().t_max}};
    double sum = 0.0;
    for (NodeId u = 0; u < stream.node_count(); ++u)
        for (NodeId v = u + 1; v < stream.node_count(); ++v)
            sum += stream.count_between(u, v, whole);
    CHECK(sum == doctest::Approx(stream.total_weight()).epsilon(1e-12));
}

TEST_CASE("aggregate merges co-window events and preserves totals") {
    const LinkStream stream = fixtures::f1();
    const LinkStream coarse = stream.aggregate(2);

    CHECK(coarse.domain().t_min == 0);
    CHECK(coarse.domain().t_max == 0);
    CHECK(coarse.domain().tick_seconds == doctest::Approx(2.0));
    REQUIRE(coarse.events().size() == 2);
    CHECK(coarse.events()[0].w == doctest::Approx(2.0));
    CHECK(coarse.total_weight() == doctest::Approx(stream.total_weight()));
    for (NodeId u = 0; u < stream.node_count(); ++u)
        CHECK(coarse.degree(u) == doctest::Approx(stream.degree(u)));
}

TEST_CASE("aggregate with window 1 is the identity") {
    const LinkStream stream = random_stream(7, 12, 40, /*seed=*/3);
    const LinkStream same = stream.aggregate(1);
    REQUIRE(same.events().size() == stream.events().size());
    for (std::size_t i = 0; i < stream.events().size(); ++i) {
        CHECK(same.events()[i].u == stream.events()[i].u);
        CHECK(same.events()[i].v == stream.events()[i].v);
        CHECK(same.events()[i].t == stream.events()[i].t);
        CHECK(same.events()[i].w == doctest::Approx(stream.events()[i].w));
    }
}

TEST_CASE("aggregate invariants hold for every window size") {
    const LinkStream stream = random_stream(10, 17, 80, /*seed=*/11, /*weighted=*/true);
    for (Tick w = 1; w <= 20; ++w) {
        const LinkStream coarse = stream.aggregate(w);
        CAPTURE(w);
        CHECK(coarse.domain().t_min == 0);
        CHECK(coarse.domain().length() == (stream.domain().length() + w - 1) / w);
        CHECK(coarse.total_weight() == doctest::Approx(stream.total_weight()).epsilon(1e-12));
        for (NodeId u = 0; u < stream.node_count(); ++u)
            CHECK(coarse.degree(u) == doctest::Approx(stream.degree(u)).epsilon(1e-12));
    }
    CHECK_THROWS_AS((void)stream.aggregate(0), ValidationError);
}

TEST_CASE("slice_into_snapshots tiles the domain") {
    const LinkStream stream = fixtures::f1();

    SUBCASE("window 1: one graph per tick") {
        const SnapshotSequence slices = stream.slice_into_snapshots(1);
        REQUIRE(slices.windows.size() == 2);
        CHECK(slices.windows[0].span == TickInterval{0, 0});
        CHECK(slices.windows[1].span == TickInterval{1, 1});
        for (const auto& snapshot : slices.windows) {
            CHECK(snapshot.graph.total_weight() == doctest::Approx(2.0));
            CHECK(snapshot.graph.edge_weight(0, 1) == doctest::Approx(1.0));
            CHECK(snapshot.graph.edge_weight(2, 3) == doctest::Approx(1.0));
        }
        CHECK(slices.total_weight() == doctest::Approx(stream.total_weight()));
    }
    SUBCASE("window covering everything: one summed graph") {
        const SnapshotSequence slices = stream.slice_into_snapshots(2);
        REQUIRE(slices.windows.size() == 1);
        CHECK(slices.windows[0].graph.edge_weight(0, 1) == doctest::Approx(2.0));
    }
    SUBCASE("silent windows give empty graphs") {
        LinkStreamBuilder builder;
        builder.domain(0, 3);
        builder.add("a", "b", 0);
        const SnapshotSequence slices = builder.build().slice_into_snapshots(1);
        REQUIRE(slices.windows.size() == 4);
        CHECK_FALSE(slices.windows[0].graph.empty());
        CHECK(slices.windows[1].graph.empty());
        CHECK(slices.windows[3].graph.empty());
    }
}

TEST_CASE("topochrone components on the handmade fixtures") {
    SUBCASE("parallel pairs over a shared span form one component") {
        const auto components = fixtures::f1().topochrone_components();
        REQUIRE(components.size() == 1);
        CHECK(components[0].nodes == std::vector<NodeId>{0, 1, 2, 3});
        CHECK(components[0].span == TickInterval{0, 1});
    }
    SUBCASE("node- and time-disjoint halves stay separate") {
        const auto components = fixtures::f2().topochrone_components();
        REQUIRE(components.size() == 2);
        CHECK(components[0].nodes == std::vector<NodeId>{0, 1});
        CHECK(components[0].span == TickInterval{0, 0});
        CHECK(components[1].nodes == std::vector<NodeId>{2, 3});
        CHECK(components[1].span == TickInterval{1, 1});
    }
    SUBCASE("a shared tick joins node-disjoint events") {
        LinkStreamBuilder builder;
        builder.add("a", "b", 0).add("c", "d", 0);
        CHECK(builder.build().topochrone_components().size() == 1);
    }
    SUBCASE("a shared node joins time-disjoint events") {
        LinkStreamBuilder builder;
        builder.add("a", "b", 0).add("b", "c", 5);
        const auto components = builder.build().topochrone_components();
        REQUIRE(components.size() == 1);
        CHECK(components[0].span == TickInterval{0, 5});
    }
}

TEST_CASE("topochrone components are pairwise disjoint and cover all events") {
    const LinkStream stream = random_stream(10, 12, 30, /*seed=*/5);
    const auto components = stream.topochrone_components();
    REQUIRE(!components.empty());

    std::size_t covered = 0;
    for (std::size_t i = 0; i < components.size(); ++i) {
        const std::set<NodeId> nodes_i(components[i].nodes.begin(), components[i].nodes.end());
        for (std::size_t j = i + 1; j < components.size(); ++j) {
            CHECK_FALSE(components[i].span.overlaps(components[j].span));
            for (NodeId u : components[j].nodes) CHECK(nodes_i.count(u) == 0);
        }
        for (const auto& ev : stream.events()) {
            if (nodes_i.count(ev.u)) {
                // events stay whole inside one component
                CHECK(nodes_i.count(ev.v) == 1);
                CHECK(components[i].span.contains(ev.t));
                ++covered;
            }
        }
    }
    CHECK(covered == stream.events().size());
}

TEST_CASE("node class metadata") {
    LinkStreamBuilder builder;
    builder.add_node("a", "2BIO1");
    builder.add_node("b", "MP");
    builder.add("a", "b", 0);
    const LinkStream stream = builder.build();
    REQUIRE(stream.has_class_metadata());
    CHECK(stream.node_class(stream.node("a")) == "2BIO1");
    CHECK(stream.node_class(stream.node("b")) == "MP");

    CHECK_FALSE(fixtures::f1().has_class_metadata());
}
