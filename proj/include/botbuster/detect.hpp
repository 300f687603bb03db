#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "botbuster/rr.hpp"
#include "botbuster/synth.hpp"
#include "botbuster/trace.hpp"

namespace botbuster {

/// Per-user accumulated counts and dictionaries for a whole monitored
/// network, foldable incrementally so repeated detections over a time grid
/// never rescan the trace. Single writer; safe to read from many threads
/// between folds.
class NetworkStats {
public:
    explicit NetworkStats(std::uint32_t n_users);

    /// Folds all events with time <= t starting from the current cursor,
    /// then moves the horizon to t. Events must arrive time-sorted.
    void fold_until(std::span<const TraceEvent> trace, double t);

    std::uint32_t n_users() const { return static_cast<std::uint32_t>(counts_.size()); }
    double horizon() const { return horizon_; }
    std::uint64_t count(std::uint32_t user) const { return counts_[user]; }
    const std::unordered_set<MessageId>& dict(std::uint32_t user) const { return dicts_[user]; }

private:
    std::vector<std::uint64_t> counts_;
    std::vector<std::unordered_set<MessageId>> dicts_;
    double horizon_ = 0.0;
    std::size_t cursor_ = 0;
};

struct PivotDiagnostic {
    std::uint32_t pivot = 0;
    std::uint32_t inner_size = 0; // cardinality the inner loop ended with
    bool became_best = false;
};

/// Estimated botnet at a fixed evaluation time. `banned` is empty or has
/// at least two members: a single-user botnet is not identifiable and is
/// never returned.
struct BotnetEstimate {
    std::vector<std::uint32_t> banned; // ascending user indices
    std::vector<PivotDiagnostic> per_pivot;
    double eval_time = 0.0;
};

/// Greedy pivot-scan identification. For every pivot b0 the candidate set
/// starts as {b0}; every other user j (ascending) is admitted when the
/// joint MIR of candidate+j falls below the pair threshold gamma. The
/// largest inner-loop output wins, ties keeping the earlier pivot, and a
/// winner must beat cardinality one. O(N^2) pair checks; the candidate
/// dictionary is grown in place, never recomputed.
BotnetEstimate botbuster(const NetworkStats& net, double epsilon);

/// Convenience overload: builds per-user stats from the trace up to time t.
BotnetEstimate botbuster(std::span<const TraceEvent> trace, std::uint32_t n_users, double t,
                         double epsilon);

/// Mean detection quality over independent Monte Carlo trials.
/// eta_bot[g]: expected fraction of true bots banned at grid[g]; NaN when
/// the configured botnet is empty. eta_nor[g]: expected fraction of normal
/// users banned; NaN when there are no normal users.
struct EvalReport {
    std::vector<double> grid;
    std::vector<double> eta_bot;
    std::vector<double> eta_nor;
    std::uint32_t trials = 0;
    std::vector<std::pair<std::string, std::string>> config_echo;
};

/// Runs `trials` simulations of `sim` (trial i uses seed sim.seed + i),
/// shuffles user indices per trial so index order carries no label
/// information, runs botbuster at every grid time and averages the eta
/// fractions. `jobs` caps worker threads (0 = hardware concurrency).
EvalReport evaluate(const SimConfig& sim, std::vector<double> grid, double epsilon,
                    std::uint32_t trials, unsigned jobs = 0);

} // namespace botbuster
