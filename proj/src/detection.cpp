#include "lmod/detection.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "lmod/errors.hpp"

namespace lmod {
namespace {

std::vector<NodeId> shuffled_order(std::size_t n, std::mt19937_64& rng) {
    std::vector<NodeId> order(n);
    std::iota(order.begin(), order.end(), NodeId{0});
    for (std::size_t i = n; i > 1; --i)
        std::swap(order[i - 1], order[rng() % i]);
    return order;
}

// One round of local moves; comm is updated in place. Returns whether any
// node changed community.
bool local_moves(const StaticGraph& graph, std::mt19937_64& rng, int max_passes,
                 std::vector<CommunityId>& comm) {
    const std::size_t n = graph.node_count();
    const double two_m = 2.0 * graph.total_weight();
    std::vector<double> tot(n, 0.0);
    for (NodeId u = 0; u < n; ++u) tot[comm[u]] += graph.strength(u);

    const auto order = shuffled_order(n, rng);
    bool any_move = false;
    for (int pass = 0; pass < max_passes; ++pass) {
        bool moved = false;
        for (NodeId u : order) {
            const double k_u = graph.strength(u);
            const CommunityId current = comm[u];
            tot[current] -= k_u;

            std::map<CommunityId, double> links;
            links[current] += 0.0;
            for (const auto& [v, w] : graph.neighbors(u)) links[comm[v]] += w;

            CommunityId best = current;
            double best_score = links[current] - tot[current] * k_u / two_m;
            for (const auto& [c, w] : links) {
                const double score = w - tot[c] * k_u / two_m;
                if (score > best_score + 1e-12) {
                    best = c;
                    best_score = score;
                }
            }
            tot[best] += k_u;
            comm[u] = best;
            if (best != current) {
                moved = true;
                any_move = true;
            }
        }
        if (!moved) break;
    }
    return any_move;
}

// Renumbers communities to 0..k-1 in ascending id order; returns k.
std::size_t densify(std::vector<CommunityId>& comm) {
    std::map<CommunityId, CommunityId> remap;
    for (CommunityId c : comm) remap.emplace(c, 0);
    CommunityId next = 0;
    for (auto& [old_id, new_id] : remap) new_id = next++;
    for (CommunityId& c : comm) c = remap.at(c);
    return remap.size();
}

StaticGraph coarsen(const StaticGraph& graph, const std::vector<CommunityId>& comm,
                    std::size_t k) {
    std::map<std::pair<CommunityId, CommunityId>, Weight> between;
    std::vector<Weight> self(k, 0.0);
    for (NodeId u = 0; u < graph.node_count(); ++u) {
        self[comm[u]] += graph.self_weight(u);
        for (const auto& [v, w] : graph.neighbors(u)) {
            if (v < u) continue; // each undirected edge once
            if (comm[u] == comm[v])
                self[comm[u]] += 2.0 * w;
            else
                between[std::minmax(comm[u], comm[v])] += w;
        }
    }
    std::vector<StaticGraph::Edge> edges;
    edges.reserve(between.size());
    for (const auto& [key, w] : between) edges.push_back({key.first, key.second, w});
    return StaticGraph(k, edges, self);
}

} // namespace

std::vector<CommunityId> louvain_static(const StaticGraph& graph, std::uint64_t seed,
                                        int max_iterations) {
    std::vector<CommunityId> assign(graph.node_count());
    std::iota(assign.begin(), assign.end(), CommunityId{0});
    if (graph.total_weight() <= 0.0) return assign; // nothing to cluster

    std::mt19937_64 rng(seed);
    StaticGraph level = graph;
    while (true) {
        std::vector<CommunityId> comm(level.node_count());
        std::iota(comm.begin(), comm.end(), CommunityId{0});
        const bool improved = local_moves(level, rng, max_iterations, comm);
        if (!improved) break;
        const std::size_t k = densify(comm);
        for (CommunityId& c : assign) c = comm[c];
        if (k == level.node_count()) break;
        level = coarsen(level, comm, k);
    }
    densify(assign);
    return assign;
}

namespace {

double jaccard(const std::vector<NodeId>& a, const std::vector<NodeId>& b) {
    std::size_t common = 0, i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) ++common, ++i, ++j;
        else if (a[i] < b[j]) ++i;
        else ++j;
    }
    const std::size_t all = a.size() + b.size() - common;
    return all == 0 ? 0.0 : static_cast<double>(common) / static_cast<double>(all);
}

} // namespace

TemporalPartition detect_ns(const LinkStream& stream, const DetectionConfig& config) {
    if (config.window_ticks <= 0)
        throw ValidationError("slicing window must be positive");
    if (config.jaccard_threshold < 0.0 || config.jaccard_threshold > 1.0)
        throw ValidationError("jaccard threshold must lie in [0, 1]");

    const auto snapshots = stream.slice_into_snapshots(config.window_ticks);
    std::vector<SegmentEntry> entries;
    CommunityId next_label = 0;
    // global label -> node set in the previous non-empty slice
    std::vector<std::pair<CommunityId, std::vector<NodeId>>> previous;

    for (std::size_t s = 0; s < snapshots.windows.size(); ++s) {
        const auto& window = snapshots.windows[s];
        if (window.graph.total_weight() <= 0.0) {
            previous.clear(); // a silent slice breaks every label chain
            continue;
        }
        const auto local = louvain_static(window.graph, config.seed + s, config.max_iterations);
        std::map<CommunityId, std::vector<NodeId>> groups;
        for (NodeId u = 0; u < window.graph.node_count(); ++u)
            if (window.graph.strength(u) > 0.0) groups[local[u]].push_back(u);

        struct Candidate {
            double overlap;
            std::size_t size; // current community size, larger wins ties
            CommunityId prev_label;
            CommunityId local_id;
        };
        std::vector<Candidate> candidates;
        for (const auto& [local_id, nodes] : groups) {
            for (const auto& [prev_label, prev_nodes] : previous) {
                const double j = jaccard(nodes, prev_nodes);
                if (j >= config.jaccard_threshold)
                    candidates.push_back({j, nodes.size(), prev_label, local_id});
            }
        }
        std::sort(candidates.begin(), candidates.end(),
                  [](const Candidate& a, const Candidate& b) {
                      if (a.overlap != b.overlap) return a.overlap > b.overlap;
                      if (a.size != b.size) return a.size > b.size;
                      if (a.prev_label != b.prev_label) return a.prev_label < b.prev_label;
                      return a.local_id < b.local_id;
                  });

        std::map<CommunityId, CommunityId> label_of;
        std::set<CommunityId> taken;
        for (const auto& cand : candidates) {
            if (label_of.count(cand.local_id) || taken.count(cand.prev_label)) continue;
            label_of[cand.local_id] = cand.prev_label;
            taken.insert(cand.prev_label);
        }

        std::vector<std::pair<CommunityId, std::vector<NodeId>>> labeled;
        for (const auto& [local_id, nodes] : groups) {
            auto it = label_of.find(local_id);
            const CommunityId label = it != label_of.end() ? it->second : next_label++;
            for (NodeId u : nodes) entries.push_back({u, window.span, label});
            labeled.emplace_back(label, nodes);
        }
        previous = std::move(labeled);
    }
    return TemporalPartition::from_segments(stream.node_count(), std::move(entries));
}

namespace {

double score(const LinkStream& stream, std::size_t n_nodes,
             const std::vector<SegmentEntry>& entries, const DetectionConfig& config) {
    const auto partition = TemporalPartition::from_segments(n_nodes, entries);
    return l_modularity(stream, partition, config.kind, config.omega).q;
}

} // namespace

TemporalPartition detect_greedy_lm(const LinkStream& stream, const TemporalPartition& initial,
                                   const DetectionConfig& config) {
    if (stream.total_weight() <= 0.0)
        throw ValidationError("refinement undefined for an empty stream");
    const std::size_t n = initial.node_count();

    std::vector<SegmentEntry> entries = initial.all_segments();
    if (entries.empty()) return initial;
    double current_q = score(stream, n, entries, config);

    for (int iter = 0; iter < config.max_iterations; ++iter) {
        std::set<CommunityId> ids;
        for (const auto& entry : entries) ids.insert(entry.community);
        const CommunityId fresh = *ids.rbegin() + 1;

        std::vector<SegmentEntry> best_entries;
        double best_q = current_q;
        auto consider = [&](std::vector<SegmentEntry> candidate) {
            const double q = score(stream, n, candidate, config);
            if (q > best_q + 1e-12) {
                best_q = q;
                best_entries = std::move(candidate);
            }
        };

        // Reassign one run to another existing community or drop it.
        for (std::size_t i = 0; i < entries.size(); ++i) {
            for (CommunityId target : ids) {
                if (target == entries[i].community) continue;
                auto candidate = entries;
                candidate[i].community = target;
                consider(std::move(candidate));
            }
            auto candidate = entries;
            candidate.erase(candidate.begin() + static_cast<std::ptrdiff_t>(i));
            if (!candidate.empty()) consider(std::move(candidate));
        }

        // Merge a pair of communities.
        for (auto it = ids.begin(); it != ids.end(); ++it) {
            for (auto jt = std::next(it); jt != ids.end(); ++jt) {
                auto candidate = entries;
                for (auto& entry : candidate)
                    if (entry.community == *jt) entry.community = *it;
                consider(std::move(candidate));
            }
        }

        // Split one community at a tick boundary: ticks before b stay, the
        // rest move to a new community.
        for (CommunityId c : ids) {
            Tick lo = std::numeric_limits<Tick>::max();
            Tick hi = std::numeric_limits<Tick>::min();
            for (const auto& entry : entries) {
                if (entry.community != c) continue;
                lo = std::min(lo, entry.span.start);
                hi = std::max(hi, entry.span.end);
            }
            std::set<Tick> boundaries;
            for (const auto& entry : entries)
                if (entry.community == c && entry.span.start > lo)
                    boundaries.insert(entry.span.start);
            for (const auto& event : stream.events())
                if (event.t > lo && event.t <= hi) boundaries.insert(event.t);
            for (Tick b : boundaries) {
                std::vector<SegmentEntry> candidate;
                candidate.reserve(entries.size() + 4);
                for (const auto& entry : entries) {
                    if (entry.community != c || entry.span.end < b) {
                        candidate.push_back(entry);
                    } else if (entry.span.start >= b) {
                        candidate.push_back({entry.node, entry.span, fresh});
                    } else {
                        candidate.push_back({entry.node, {entry.span.start, b - 1}, c});
                        candidate.push_back({entry.node, {b, entry.span.end}, fresh});
                    }
                }
                consider(std::move(candidate));
            }
        }

        if (best_entries.empty()) break;
        entries = std::move(best_entries);
        current_q = best_q;
    }
    return TemporalPartition::from_segments(n, std::move(entries));
}

} // namespace lmod
