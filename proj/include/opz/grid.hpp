#pragma once

#include <algorithm>
#include <vector>

#include "opz/process.hpp"

namespace opz {

// Union of the switching times of the given processes, sorted, deduplicated.
inline std::vector<Time> event_times(const std::vector<const OrderProcess*>& ps) {
    std::vector<Time> ts;
    for (const OrderProcess* p : ps)
        for (const auto& [pair, t] : p->entries()) ts.push_back(t);
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    return ts;
}

// Probe instants for comparing step functions of time: 0, every event time t
// together with t - delta and t + delta, and one instant past the last event.
// delta is a quarter of the smallest positive gap between grid values (0
// included), so probes never skip over a step.
inline std::vector<Time> probe_grid(std::vector<Time> events) {
    events.push_back(0.0);
    std::sort(events.begin(), events.end());
    events.erase(std::unique(events.begin(), events.end()), events.end());
    Time delta = never;
    for (std::size_t i = 1; i < events.size(); ++i)
        delta = std::min(delta, events[i] - events[i - 1]);
    if (!(delta < never)) delta = 1.0;
    delta /= 4;

    std::vector<Time> grid;
    grid.reserve(events.size() * 3 + 2);
    for (Time t : events) {
        if (t - delta > 0) grid.push_back(t - delta);
        grid.push_back(t);
        grid.push_back(t + delta);
    }
    grid.push_back(0.0);
    grid.push_back(events.back() + 1.0);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

inline std::vector<Time> probe_grid_of(const std::vector<const OrderProcess*>& ps) {
    return probe_grid(event_times(ps));
}

}  // namespace opz
