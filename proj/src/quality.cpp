#include "lmod/quality.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "lmod/errors.hpp"

namespace lmod {

std::string_view to_string(ExpectationKind kind) {
    switch (kind) {
    case ExpectationKind::CM: return "cm";
    case ExpectationKind::JM: return "jm";
    case ExpectationKind::MM: return "mm";
    }
    throw ValidationError("unknown expectation kind");
}

ExpectationKind parse_kind(std::string_view text) {
    std::string lower(text);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "cm") return ExpectationKind::CM;
    if (lower == "jm") return ExpectationKind::JM;
    if (lower == "mm") return ExpectationKind::MM;
    throw ValidationError("unknown expectation kind '" + std::string(text) + "'");
}

double internal_count(const LinkStream& stream, const TemporalPartition& partition,
                      CommunityId c) {
    double total = 0.0;
    for (const auto& event : stream.events()) {
        if (partition.membership_at(event.u, event.t) != c) continue;
        if (partition.membership_at(event.v, event.t) != c) continue;
        total += 2.0 * event.w;
    }
    return total;
}

double internal_count(const LinkStream& stream, const TemporalPartition& partition) {
    double total = 0.0;
    for (const auto& event : stream.events()) {
        const auto cu = partition.membership_at(event.u, event.t);
        if (cu && cu == partition.membership_at(event.v, event.t)) total += 2.0 * event.w;
    }
    return total;
}

namespace {

// sum over ordered member pairs of k_u k_v |T_{uv in C}|, computed as the
// integral of (sum of present degrees)^2 over the community's lifetime.
double co_membership_sum(const LinkStream& stream, const TemporalPartition& partition,
                         CommunityId c) {
    std::vector<std::pair<Tick, double>> deltas;
    for (const auto& [u, span] : partition.community_segments(c)) {
        deltas.emplace_back(span.start, stream.degree(u));
        deltas.emplace_back(span.end + 1, -stream.degree(u));
    }
    std::sort(deltas.begin(), deltas.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    double total = 0.0;
    double present = 0.0;
    for (std::size_t i = 0; i < deltas.size();) {
        const Tick at = deltas[i].first;
        while (i < deltas.size() && deltas[i].first == at) present += deltas[i++].second;
        if (i < deltas.size()) total += present * present * static_cast<double>(deltas[i].first - at);
    }
    return total;
}

} // namespace

double expectation(const LinkStream& stream, const TemporalPartition& partition, CommunityId c,
                   ExpectationKind kind) {
    const double two_m = 2.0 * stream.total_weight();
    const double horizon = static_cast<double>(stream.domain().length());
    if (two_m <= 0.0)
        throw ValidationError("expectation undefined for an empty stream");

    switch (kind) {
    case ExpectationKind::CM:
        return co_membership_sum(stream, partition, c) / (two_m * horizon);
    case ExpectationKind::JM: {
        double degree_sum = 0.0;
        for (const auto& [u, duration] : partition.visitor_durations(c))
            degree_sum += stream.degree(u);
        return degree_sum * degree_sum * static_cast<double>(partition.community_span(c)) /
               (two_m * horizon);
    }
    case ExpectationKind::MM: {
        double weighted = 0.0;
        for (const auto& [u, duration] : partition.visitor_durations(c))
            weighted += stream.degree(u) * std::sqrt(static_cast<double>(duration));
        return weighted * weighted / (two_m * horizon);
    }
    }
    throw ValidationError("unknown expectation kind");
}

double expectation(const LinkStream& stream, const TemporalPartition& partition,
                   ExpectationKind kind) {
    double total = 0.0;
    for (CommunityId c : partition.community_ids())
        total += expectation(stream, partition, c, kind);
    return total;
}

QualityReport l_modularity(const LinkStream& stream, const TemporalPartition& partition,
                           ExpectationKind kind, double omega) {
    const double two_m = 2.0 * stream.total_weight();
    if (two_m <= 0.0)
        throw ValidationError("modularity undefined for an empty stream");
    if (omega < 0.0)
        throw ValidationError("smoothness weight must be non-negative");

    std::map<CommunityId, double> internal;
    for (const auto& event : stream.events()) {
        const auto cu = partition.membership_at(event.u, event.t);
        const auto cv = partition.membership_at(event.v, event.t);
        if (cu && cu == cv) internal[*cu] += 2.0 * event.w;
    }

    QualityReport report;
    report.kind = kind;
    report.omega = omega;
    for (CommunityId c : partition.community_ids()) {
        CommunityQuality entry;
        entry.community = c;
        entry.internal_raw = internal.count(c) ? internal.at(c) : 0.0;
        entry.expectation_raw = expectation(stream, partition, c, kind);
        entry.contribution = (entry.internal_raw - entry.expectation_raw) / two_m;
        report.l_term += entry.internal_raw / two_m;
        report.e_term += entry.expectation_raw / two_m;
        report.per_community.push_back(entry);
    }
    report.rho = discontinuity(partition, stream);
    report.s_term = omega * report.rho;
    report.q = report.l_term - report.e_term - report.s_term;
    return report;
}

namespace {

bool member_at(const TemporalPartition& partition, NodeId u, Tick t, CommunityId c) {
    auto got = partition.membership_at(u, t);
    return got && *got == c;
}

long oracle_switches(const TemporalPartition& partition, NodeId u, const TimeDomain& domain) {
    long runs = 0;
    std::optional<CommunityId> previous;
    for (Tick t = domain.t_min; t <= domain.t_max; ++t) {
        auto current = partition.membership_at(u, t);
        if (current && current != previous) ++runs;
        previous = current;
    }
    return runs > 0 ? runs - 1 : 0;
}

} // namespace

QualityReport oracle_l_modularity(const LinkStream& stream, const TemporalPartition& partition,
                                  ExpectationKind kind, double omega) {
    const double two_m = 2.0 * stream.total_weight();
    if (two_m <= 0.0)
        throw ValidationError("modularity undefined for an empty stream");
    if (omega < 0.0)
        throw ValidationError("smoothness weight must be non-negative");
    const auto domain = stream.domain();
    const double horizon = static_cast<double>(domain.length());
    const NodeId n = static_cast<NodeId>(stream.node_count());

    QualityReport report;
    report.kind = kind;
    report.omega = omega;
    for (CommunityId c : partition.community_ids()) {
        CommunityQuality entry;
        entry.community = c;
        for (const auto& event : stream.events()) {
            if (member_at(partition, event.u, event.t, c) &&
                member_at(partition, event.v, event.t, c))
                entry.internal_raw += 2.0 * event.w;
        }

        std::vector<double> duration(n, 0.0);
        double lifetime = 0.0;
        for (Tick t = domain.t_min; t <= domain.t_max; ++t) {
            bool any = false;
            for (NodeId u = 0; u < n; ++u) {
                if (!member_at(partition, u, t, c)) continue;
                duration[u] += 1.0;
                any = true;
            }
            if (any) lifetime += 1.0;
        }

        for (NodeId u = 0; u < n; ++u) {
            for (NodeId v = 0; v < n; ++v) {
                const double pair_rate = stream.degree(u) * stream.degree(v) / two_m;
                double time_factor = 0.0;
                switch (kind) {
                case ExpectationKind::CM:
                    for (Tick t = domain.t_min; t <= domain.t_max; ++t)
                        if (member_at(partition, u, t, c) && member_at(partition, v, t, c))
                            time_factor += 1.0;
                    break;
                case ExpectationKind::JM:
                    if (duration[u] > 0.0 && duration[v] > 0.0) time_factor = lifetime;
                    break;
                case ExpectationKind::MM:
                    time_factor = std::sqrt(duration[u] * duration[v]);
                    break;
                }
                entry.expectation_raw += pair_rate * time_factor / horizon;
            }
        }
        entry.contribution = (entry.internal_raw - entry.expectation_raw) / two_m;
        report.l_term += entry.internal_raw / two_m;
        report.e_term += entry.expectation_raw / two_m;
        report.per_community.push_back(entry);
    }

    long switches = 0;
    for (NodeId u = 0; u < n; ++u) switches += oracle_switches(partition, u, domain);
    report.rho = static_cast<double>(switches) / two_m;
    report.s_term = omega * report.rho;
    report.q = report.l_term - report.e_term - report.s_term;
    return report;
}

double static_modularity(const StaticGraph& graph, std::span<const CommunityId> membership) {
    if (membership.size() != graph.node_count())
        throw ValidationError("membership size does not match the graph");
    const double two_m = 2.0 * graph.total_weight();
    if (two_m <= 0.0)
        throw ValidationError("modularity undefined for an empty graph");

    std::map<CommunityId, std::pair<double, double>> sums; // community -> (in, tot)
    for (NodeId u = 0; u < graph.node_count(); ++u) {
        const CommunityId c = membership[u];
        if (c == kNoCommunity) continue;
        auto& [in, tot] = sums[c];
        tot += graph.strength(u);
        in += graph.self_weight(u);
        for (const auto& [v, w] : graph.neighbors(u))
            if (membership[v] == c) in += w;
    }
    double q = 0.0;
    for (const auto& [c, pair] : sums)
        q += pair.first / two_m - (pair.second / two_m) * (pair.second / two_m);
    return q;
}

double ms_modularity(const SnapshotSequence& snapshots,
                     const std::vector<std::vector<CommunityId>>& memberships, double omega,
                     CouplingMode mode) {
    const std::size_t n_slices = snapshots.windows.size();
    if (memberships.size() != n_slices)
        throw ValidationError("membership rows do not match the slice count");
    for (const auto& row : memberships)
        if (row.size() != snapshots.node_count)
            throw ValidationError("membership row does not match the node vocabulary");

    if (snapshots.total_weight() <= 0.0)
        throw ValidationError("multislice modularity undefined when every slice is empty");

    double numerator = 0.0;
    double two_mu = 0.0;
    for (std::size_t s = 0; s < n_slices; ++s) {
        const StaticGraph& graph = snapshots.windows[s].graph;
        const double two_ms = 2.0 * graph.total_weight();
        two_mu += two_ms;
        if (two_ms <= 0.0) continue;
        std::map<CommunityId, std::pair<double, double>> sums;
        for (NodeId u = 0; u < graph.node_count(); ++u) {
            const CommunityId c = memberships[s][u];
            if (c == kNoCommunity) continue;
            auto& [in, tot] = sums[c];
            tot += graph.strength(u);
            in += graph.self_weight(u);
            for (const auto& [v, w] : graph.neighbors(u))
                if (memberships[s][v] == c) in += w;
        }
        for (const auto& [c, pair] : sums)
            numerator += pair.first - pair.second * pair.second / two_ms;
    }

    for (std::size_t s = 0; s + 1 < n_slices; ++s) {
        for (NodeId u = 0; u < snapshots.node_count; ++u) {
            if (mode == CouplingMode::ActiveOnly &&
                (snapshots.windows[s].graph.strength(u) <= 0.0 ||
                 snapshots.windows[s + 1].graph.strength(u) <= 0.0))
                continue;
            two_mu += 2.0 * omega;
            const CommunityId a = memberships[s][u];
            if (a != kNoCommunity && a == memberships[s + 1][u]) numerator += 2.0 * omega;
        }
    }

    if (two_mu <= 0.0)
        throw ValidationError("multislice modularity undefined without edges or couplings");
    return numerator / two_mu;
}

std::vector<std::vector<CommunityId>> slice_membership_from(const TemporalPartition& partition,
                                                            const SnapshotSequence& snapshots) {
    std::vector<std::vector<CommunityId>> rows;
    rows.reserve(snapshots.windows.size());
    for (const auto& window : snapshots.windows) {
        std::vector<CommunityId> row(snapshots.node_count, kNoCommunity);
        for (NodeId u = 0; u < snapshots.node_count; ++u)
            row[u] = partition.membership_at(u, window.span.start).value_or(kNoCommunity);
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace lmod
