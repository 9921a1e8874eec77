#include "lmod/linkstream.hpp"

#include <algorithm>
#include <numeric>

#include "lmod/errors.hpp"

namespace lmod {

const std::string& LinkStream::node_name(NodeId u) const {
    if (u >= names_.size())
        throw ValidationError("unknown node id " + std::to_string(u));
    return names_[u];
}

std::optional<NodeId> LinkStream::find_node(std::string_view name) const {
    auto it = name_index_.find(std::string(name));
    if (it == name_index_.end())
        return std::nullopt;
    return it->second;
}

NodeId LinkStream::node(std::string_view name) const {
    auto id = find_node(name);
    if (!id)
        throw ValidationError("unknown node '" + std::string(name) + "'");
    return *id;
}

Weight LinkStream::degree(NodeId u) const {
    if (u >= degree_.size())
        throw ValidationError("unknown node id " + std::to_string(u));
    return degree_[u];
}

const std::string& LinkStream::node_class(NodeId u) const {
    if (u >= classes_.size())
        throw ValidationError("unknown node id " + std::to_string(u));
    return classes_[u];
}

Weight LinkStream::count_between(NodeId u, NodeId v,
                                 std::span<const TickInterval> intervals) const {
    if (u >= names_.size() || v >= names_.size())
        throw ValidationError("unknown node id in count_between");
    if (intervals.empty() || u == v)
        return 0.0;
    const auto [lo, hi] = std::minmax(u, v);
    Weight total = 0.0;
    for (const auto& e : events_) {
        if (e.u != lo || e.v != hi)
            continue;
        for (const auto& iv : intervals) {
            if (iv.contains(e.t)) {
                total += e.w;
                break;
            }
        }
    }
    return total;
}

LinkStream LinkStreamBuilder::build() {
    LinkStream s;
    s.names_ = names_;
    s.classes_ = classes_;
    s.name_index_ = name_index_;
    s.has_classes_ = std::any_of(classes_.begin(), classes_.end(),
                                 [](const std::string& c) { return !c.empty(); });

    for (auto& e : raw_) {
        if (e.u == e.v)
            throw ValidationError("self-interaction on node '" + names_[e.u] + "'");
        if (e.w <= 0.0)
            throw ValidationError("non-positive interaction weight");
        if (e.u > e.v)
            std::swap(e.u, e.v);
    }

    if (domain_) {
        s.domain_ = *domain_;
        for (const auto& e : raw_)
            if (!s.domain_.contains(e.t))
                throw ValidationError("interaction at tick " + std::to_string(e.t) +
                                      " outside declared domain");
    } else {
        if (raw_.empty())
            throw ValidationError("cannot infer a time domain without events; declare one");
        s.domain_.tick_seconds = tick_seconds_;
        auto [lo, hi] =
            std::minmax_element(raw_.begin(), raw_.end(), [](const Interaction& a,
                                                             const Interaction& b) { return a.t < b.t; });
        s.domain_.t_min = lo->t;
        s.domain_.t_max = hi->t;
    }

    std::sort(raw_.begin(), raw_.end(), [](const Interaction& a, const Interaction& b) {
        return std::tie(a.t, a.u, a.v) < std::tie(b.t, b.u, b.v);
    });
    s.events_.reserve(raw_.size());
    for (std::size_t i = 0; i < raw_.size();) {
        Interaction e = raw_[i];
        for (++i; i < raw_.size() && raw_[i].t == e.t && raw_[i].u == e.u && raw_[i].v == e.v; ++i)
            e.w += raw_[i].w;
        s.events_.push_back(e);
    }

    s.degree_.assign(names_.size(), 0.0);
    for (const auto& e : s.events_) {
        s.degree_[e.u] += e.w;
        s.degree_[e.v] += e.w;
        s.total_weight_ += e.w;
    }
    return s;
}

LinkStreamBuilder& LinkStreamBuilder::domain(Tick t_min, Tick t_max, double tick_seconds) {
    if (t_min > t_max)
        throw ValidationError("domain t_min > t_max");
    if (tick_seconds <= 0.0)
        throw ValidationError("tick_seconds must be positive");
    domain_ = TimeDomain{t_min, t_max, tick_seconds};
    return *this;
}

LinkStreamBuilder& LinkStreamBuilder::tick_seconds(double seconds) {
    if (seconds <= 0.0)
        throw ValidationError("tick_seconds must be positive");
    tick_seconds_ = seconds;
    if (domain_)
        domain_->tick_seconds = seconds;
    return *this;
}

NodeId LinkStreamBuilder::add_node(std::string name, std::string node_class) {
    auto it = name_index_.find(name);
    if (it != name_index_.end()) {
        if (!node_class.empty())
            classes_[it->second] = std::move(node_class);
        return it->second;
    }
    const NodeId id = static_cast<NodeId>(names_.size());
    name_index_.emplace(name, id);
    names_.push_back(std::move(name));
    classes_.push_back(std::move(node_class));
    return id;
}

LinkStreamBuilder& LinkStreamBuilder::add(std::string_view u, std::string_view v, Tick t, Weight w) {
    return add(add_node(std::string(u)), add_node(std::string(v)), t, w);
}

LinkStreamBuilder& LinkStreamBuilder::add(NodeId u, NodeId v, Tick t, Weight w) {
    if (u >= names_.size() || v >= names_.size())
        throw ValidationError("interaction endpoint not declared");
    raw_.push_back(Interaction{u, v, t, w});
    return *this;
}

LinkStream LinkStream::aggregate(Tick window_ticks) const {
    if (window_ticks < 1)
        throw ValidationError("aggregation window must be >= 1 tick");
    LinkStream s;
    s.names_ = names_;
    s.classes_ = classes_;
    s.has_classes_ = has_classes_;
    s.name_index_ = name_index_;
    const Tick n_windows = (domain_.length() + window_ticks - 1) / window_ticks;
    s.domain_ = TimeDomain{0, std::max<Tick>(n_windows, 1) - 1,
                           domain_.tick_seconds * static_cast<double>(window_ticks)};

    s.events_.reserve(events_.size());
    for (const auto& e : events_) {
        Interaction f = e;
        f.t = (e.t - domain_.t_min) / window_ticks;
        s.events_.push_back(f);
    }
    // Events stay sorted by (t, u, v) except for ties introduced by the
    // window collapse; re-sort and coalesce.
    std::sort(s.events_.begin(), s.events_.end(),
              [](const Interaction& a, const Interaction& b) {
                  return std::tie(a.t, a.u, a.v) < std::tie(b.t, b.u, b.v);
              });
    std::vector<Interaction> merged;
    merged.reserve(s.events_.size());
    for (std::size_t i = 0; i < s.events_.size();) {
        Interaction e = s.events_[i];
        for (++i;
             i < s.events_.size() && s.events_[i].t == e.t && s.events_[i].u == e.u &&
             s.events_[i].v == e.v;
             ++i)
            e.w += s.events_[i].w;
        merged.push_back(e);
    }
    s.events_ = std::move(merged);
    s.degree_ = degree_;
    s.total_weight_ = total_weight_;
    return s;
}

SnapshotSequence LinkStream::slice_into_snapshots(Tick window_ticks) const {
    if (window_ticks < 1)
        throw ValidationError("snapshot window must be >= 1 tick");
    SnapshotSequence seq;
    seq.source_domain = domain_;
    seq.node_count = names_.size();

    const Tick n_windows = std::max<Tick>((domain_.length() + window_ticks - 1) / window_ticks, 1);
    std::size_t next_event = 0;
    for (Tick i = 0; i < n_windows; ++i) {
        TickInterval span{domain_.t_min + i * window_ticks,
                          std::min(domain_.t_min + (i + 1) * window_ticks - 1, domain_.t_max)};
        std::vector<StaticGraph::Edge> edges;
        while (next_event < events_.size() && events_[next_event].t <= span.end) {
            const auto& e = events_[next_event++];
            edges.push_back({e.u, e.v, e.w});
        }
        seq.windows.push_back(Snapshot{span, StaticGraph(names_.size(), std::move(edges))});
    }
    return seq;
}

std::vector<TopochroneComponent> LinkStream::topochrone_components() const {
    // Phase 1: union events that share an endpoint.
    std::vector<std::size_t> parent(events_.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    auto unite = [&](std::size_t a, std::size_t b) { parent[find(a)] = find(b); };

    std::vector<std::size_t> last_event_of_node(names_.size(), SIZE_MAX);
    for (std::size_t i = 0; i < events_.size(); ++i) {
        for (NodeId n : {events_[i].u, events_[i].v}) {
            if (last_event_of_node[n] != SIZE_MAX)
                unite(i, last_event_of_node[n]);
            last_event_of_node[n] = i;
        }
    }

    struct Group {
        std::vector<NodeId> nodes;
        Tick lo, hi;
    };
    std::unordered_map<std::size_t, Group> groups;
    for (std::size_t i = 0; i < events_.size(); ++i) {
        auto& g = groups[find(i)];
        if (g.nodes.empty()) {
            g.lo = events_[i].t;
            g.hi = events_[i].t;
        }
        g.nodes.push_back(events_[i].u);
        g.nodes.push_back(events_[i].v);
        g.lo = std::min(g.lo, events_[i].t);
        g.hi = std::max(g.hi, events_[i].t);
    }

    // Phase 2: node-disjoint groups with overlapping min-max spans merge too.
    std::vector<Group> ordered;
    ordered.reserve(groups.size());
    for (auto& [root, g] : groups)
        ordered.push_back(std::move(g));
    std::sort(ordered.begin(), ordered.end(),
              [](const Group& a, const Group& b) { return a.lo < b.lo; });

    std::vector<TopochroneComponent> out;
    for (auto& g : ordered) {
        if (!out.empty() && g.lo <= out.back().span.end) {
            auto& acc = out.back();
            acc.nodes.insert(acc.nodes.end(), g.nodes.begin(), g.nodes.end());
            acc.span.end = std::max(acc.span.end, g.hi);
        } else {
            out.push_back(TopochroneComponent{std::move(g.nodes), {g.lo, g.hi}});
        }
    }
    for (auto& c : out) {
        std::sort(c.nodes.begin(), c.nodes.end());
        c.nodes.erase(std::unique(c.nodes.begin(), c.nodes.end()), c.nodes.end());
    }
    std::sort(out.begin(), out.end(), [](const TopochroneComponent& a, const TopochroneComponent& b) {
        return a.span.start < b.span.start;
    });
    return out;
}

} // namespace lmod
