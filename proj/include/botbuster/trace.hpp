#pragma once

#include <cstdint>
#include <span>
#include <unordered_set>
#include <vector>

#include "botbuster/errors.hpp"

namespace botbuster {

/// Identity of a message's content. Two events carry the same MessageId
/// exactly when they transmitted the same message. Synthetic traces use
/// dictionary indices; ingested traces use a 64-bit content hash (a hash
/// collision can only merge two dictionary entries, which lowers the
/// measured innovation rate, never raises it).
using MessageId = std::uint64_t;

/// One timestamped message transmission by one user; the atom of all
/// analysis.
struct TraceEvent {
    double time = 0.0; // seconds, >= 0
    std::uint32_t user = 0;
    MessageId msg = 0;
};

/// A set of user indices. Non-empty for all indicator computations.
struct Subnet {
    std::vector<std::uint32_t> members;

    bool contains(std::uint32_t user) const
    {
        for (auto m : members) {
            if (m == user) {
                return true;
            }
        }
        return false;
    }

    bool disjoint_with(const Subnet& other) const
    {
        for (auto m : members) {
            if (other.contains(m)) {
                return false;
            }
        }
        return true;
    }
};

/// Accumulated transmission count and empirical dictionary of a user set,
/// observed up to `horizon` seconds. Events must be folded in time order;
/// both the count and the dictionary are monotone in time.
struct SubnetStats {
    std::uint64_t n_events = 0;
    std::unordered_set<MessageId> dict;
    double horizon = 0.0;

    double dict_size() const { return static_cast<double>(dict.size()); }
};

/// Folds one event into `stats`. Events from users outside `subnet` only
/// advance the horizon. Repeated messages never grow the dictionary.
/// Throws an ordering error if `ev.time` precedes the current horizon.
void fold_event(SubnetStats& stats, const TraceEvent& ev, const Subnet& subnet);

/// Moves the observation horizon to `t` without folding events
/// (t must not precede the horizon). Rates are always taken relative to
/// the query time, not the last event time.
void advance_horizon(SubnetStats& stats, double t);

/// Stats for one subnet over all events with time <= t.
SubnetStats build_stats(std::span<const TraceEvent> trace, const Subnet& subnet, double t);

struct UnionStats {
    SubnetStats s1;
    SubnetStats s2;
    SubnetStats joint;
};

/// Stats for s1, s2 and s1 union s2 over events with time <= t.
/// The subnets must be disjoint.
UnionStats union_stats(std::span<const TraceEvent> trace, const Subnet& s1, const Subnet& s2,
                       double t);

} // namespace botbuster
