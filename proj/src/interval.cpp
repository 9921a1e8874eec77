#include "lmod/interval.hpp"

namespace lmod {

Tick covered_length(std::span<const TickInterval> intervals) {
    Tick total = 0;
    for (const auto& iv : intervals)
        total += iv.length();
    return total;
}

Tick intersection_length(std::span<const TickInterval> a, std::span<const TickInterval> b) {
    Tick total = 0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        const Tick lo = std::max(a[i].start, b[j].start);
        const Tick hi = std::min(a[i].end, b[j].end);
        if (lo <= hi)
            total += hi - lo + 1;
        if (a[i].end < b[j].end)
            ++i;
        else
            ++j;
    }
    return total;
}

std::vector<TickInterval> merge_union(std::vector<TickInterval> intervals) {
    if (intervals.empty())
        return intervals;
    std::sort(intervals.begin(), intervals.end(),
              [](const TickInterval& x, const TickInterval& y) {
                  return x.start < y.start || (x.start == y.start && x.end < y.end);
              });
    std::vector<TickInterval> merged;
    merged.push_back(intervals.front());
    for (std::size_t i = 1; i < intervals.size(); ++i) {
        TickInterval& cur = merged.back();
        if (intervals[i].start <= cur.end + 1)
            cur.end = std::max(cur.end, intervals[i].end);
        else
            merged.push_back(intervals[i]);
    }
    return merged;
}

} // namespace lmod
