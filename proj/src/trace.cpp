#include "botbuster/trace.hpp"

#include <string>

namespace botbuster {

void fold_event(SubnetStats& stats, const TraceEvent& ev, const Subnet& subnet)
{
    if (ev.time < 0.0) {
        fail(ErrorCategory::Domain, "event time must be nonnegative");
    }
    if (ev.time < stats.horizon) {
        fail(ErrorCategory::Ordering,
             "out-of-order event at t=" + std::to_string(ev.time) + " behind horizon t="
                 + std::to_string(stats.horizon));
    }
    stats.horizon = ev.time;
    if (subnet.contains(ev.user)) {
        ++stats.n_events;
        stats.dict.insert(ev.msg);
    }
}

void advance_horizon(SubnetStats& stats, double t)
{
    if (t < stats.horizon) {
        fail(ErrorCategory::Ordering, "horizon may only move forward");
    }
    stats.horizon = t;
}

SubnetStats build_stats(std::span<const TraceEvent> trace, const Subnet& subnet, double t)
{
    SubnetStats stats;
    for (const auto& ev : trace) {
        if (ev.time > t) {
            break;
        }
        fold_event(stats, ev, subnet);
    }
    advance_horizon(stats, t);
    return stats;
}

UnionStats union_stats(std::span<const TraceEvent> trace, const Subnet& s1, const Subnet& s2,
                       double t)
{
    if (!s1.disjoint_with(s2)) {
        fail(ErrorCategory::Disjointness, "subnets overlap");
    }
    if (t <= 0.0) {
        fail(ErrorCategory::Domain, "query time must be positive");
    }
    Subnet both;
    both.members = s1.members;
    both.members.insert(both.members.end(), s2.members.begin(), s2.members.end());

    UnionStats out;
    out.s1 = build_stats(trace, s1, t);
    out.s2 = build_stats(trace, s2, t);
    out.joint = build_stats(trace, both, t);
    return out;
}

} // namespace botbuster
