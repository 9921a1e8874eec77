#include "lmod/graph.hpp"

#include <algorithm>

#include "lmod/errors.hpp"

namespace lmod {

StaticGraph::StaticGraph(std::size_t n_nodes, std::vector<Edge> edges,
                         std::vector<Weight> self_weights) {
    adjacency_.resize(n_nodes);
    self_weight_.assign(n_nodes, 0.0);
    strength_.assign(n_nodes, 0.0);
    if (!self_weights.empty()) {
        if (self_weights.size() != n_nodes)
            throw ValidationError("self-weight vector size mismatch");
        self_weight_ = std::move(self_weights);
    }

    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
        const auto ka = std::minmax(a.u, a.v);
        const auto kb = std::minmax(b.u, b.v);
        return ka < kb;
    });
    for (std::size_t i = 0; i < edges.size();) {
        Edge e = edges[i];
        if (e.u >= n_nodes || e.v >= n_nodes)
            throw ValidationError("edge endpoint out of range");
        if (e.u == e.v)
            throw ValidationError("self-loop passed as edge; use self_weights");
        const auto key = std::minmax(e.u, e.v);
        Weight w = 0.0;
        for (; i < edges.size() && std::minmax(edges[i].u, edges[i].v) == key; ++i)
            w += edges[i].w;
        adjacency_[key.first].emplace_back(key.second, w);
        adjacency_[key.second].emplace_back(key.first, w);
    }
    for (auto& adj : adjacency_)
        std::sort(adj.begin(), adj.end());

    for (NodeId u = 0; u < n_nodes; ++u) {
        Weight k = self_weight_[u];
        for (const auto& [v, w] : adjacency_[u])
            k += w;
        strength_[u] = k;
        total_weight_ += k;
    }
    total_weight_ /= 2.0;
}

Weight StaticGraph::edge_weight(NodeId u, NodeId v) const {
    if (u == v)
        return self_weight_[u];
    const auto& adj = adjacency_[u];
    auto it = std::lower_bound(adj.begin(), adj.end(), std::pair<NodeId, Weight>{v, 0.0},
                               [](const auto& a, const auto& b) { return a.first < b.first; });
    if (it != adj.end() && it->first == v)
        return it->second;
    return 0.0;
}

Weight SnapshotSequence::total_weight() const {
    Weight m = 0.0;
    for (const auto& s : windows)
        m += s.graph.total_weight();
    return m;
}

} // namespace lmod
