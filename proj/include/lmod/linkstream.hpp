#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "lmod/graph.hpp"
#include "lmod/interval.hpp"

namespace lmod {

// One coalesced interaction: undirected, instantaneous, weighted.
// Stored with u < v.
struct Interaction {
    NodeId u = 0;
    NodeId v = 0;
    Tick t = 0;
    Weight w = 1.0;
};

// Node-set/time-span group of events that shares no node and no span with
// any other group.
struct TopochroneComponent {
    std::vector<NodeId> nodes; // sorted
    TickInterval span;         // min..max tick of the member events
};

// Immutable set of timed interactions over a discrete tick domain.
// Events are sorted by (t, u, v) and duplicate (u, v, t) triples are
// coalesced into summed weights. All queries are pure and thread-safe.
class LinkStream {
public:
    LinkStream() = default;

    std::size_t node_count() const { return names_.size(); }
    const std::string& node_name(NodeId u) const;
    std::optional<NodeId> find_node(std::string_view name) const;
    NodeId node(std::string_view name) const; // throws on unknown name

    const TimeDomain& domain() const { return domain_; }
    const std::vector<Interaction>& events() const { return events_; }

    Weight degree(NodeId u) const;
    Weight total_weight() const { return total_weight_; } // m

    // Summed weight of (u, v) events whose tick lies in any of the given
    // intervals (sorted, disjoint). Symmetric in u and v.
    Weight count_between(NodeId u, NodeId v, std::span<const TickInterval> intervals) const;

    // Coarser-resolution copy: every window of `window_ticks` source ticks
    // collapses to one tick, co-window events merging into summed weights.
    // Total weight and node degrees are preserved.
    LinkStream aggregate(Tick window_ticks) const;

    // One weighted static graph per window, windows tiling the domain in
    // order. Empty windows yield empty graphs.
    SnapshotSequence slice_into_snapshots(Tick window_ticks) const;

    // Maximal event groups pairwise disjoint in both node set and tick span.
    std::vector<TopochroneComponent> topochrone_components() const;

    // Optional per-node metadata (e.g. a class column in contact datasets).
    const std::string& node_class(NodeId u) const;
    bool has_class_metadata() const { return has_classes_; }

private:
    friend class LinkStreamBuilder;

    TimeDomain domain_;
    std::vector<std::string> names_;
    std::vector<std::string> classes_;
    bool has_classes_ = false;
    std::unordered_map<std::string, NodeId> name_index_;
    std::vector<Interaction> events_;
    std::vector<Weight> degree_;
    Weight total_weight_ = 0.0;
};

// Collects nodes and raw interactions, then validates, coalesces and
// freezes them into a LinkStream.
class LinkStreamBuilder {
public:
    // Declares the domain up front; events outside it are rejected.
    // Without this call the domain is inferred as [min t, max t].
    LinkStreamBuilder& domain(Tick t_min, Tick t_max, double tick_seconds = 1.0);
    LinkStreamBuilder& tick_seconds(double seconds);

    NodeId add_node(std::string name, std::string node_class = "");
    LinkStreamBuilder& add(std::string_view u, std::string_view v, Tick t, Weight w = 1.0);
    LinkStreamBuilder& add(NodeId u, NodeId v, Tick t, Weight w = 1.0);

    LinkStream build();

private:
    std::optional<TimeDomain> domain_;
    double tick_seconds_ = 1.0;
    std::vector<std::string> names_;
    std::vector<std::string> classes_;
    std::unordered_map<std::string, NodeId> name_index_;
    std::vector<Interaction> raw_;
};

} // namespace lmod
