#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

namespace lmod {

using Tick = std::int64_t;

// Inclusive tick interval [start, end].
struct TickInterval {
    Tick start = 0;
    Tick end = 0;

    Tick length() const { return end - start + 1; }
    bool contains(Tick t) const { return start <= t && t <= end; }
    bool overlaps(const TickInterval& o) const { return start <= o.end && o.start <= end; }

    friend bool operator==(const TickInterval&, const TickInterval&) = default;
};

// Total length of a set of pairwise-disjoint intervals.
Tick covered_length(std::span<const TickInterval> intervals);

// Length of the intersection of two interval sets, each sorted and disjoint.
Tick intersection_length(std::span<const TickInterval> a, std::span<const TickInterval> b);

// Union of an arbitrary interval collection, merged into sorted disjoint
// intervals (adjacent intervals are merged as well, ticks being discrete).
std::vector<TickInterval> merge_union(std::vector<TickInterval> intervals);

} // namespace lmod
