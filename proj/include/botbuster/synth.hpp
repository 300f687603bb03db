#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "botbuster/rng.hpp"
#include "botbuster/trace.hpp"

namespace botbuster {

/// The message pool a botnet draws from: floor(e0 + alpha * t) entries are
/// available at time t, so the pool grows linearly with dictionary rate
/// alpha. Entries are identified by their index.
struct EmulationDictionary {
    std::uint64_t e0 = 100;
    double alpha = 10.0;

    /// Number of messages available at time t (never below one; a botnet
    /// that knows no message at all cannot emit anything).
    std::uint64_t size_at(double t) const
    {
        const double s = static_cast<double>(e0) + alpha * t;
        return s < 1.0 ? 1 : static_cast<std::uint64_t>(s);
    }
};

enum class Scheduling {
    Synchronous, // every bot transmits at epochs k / rate
    Poisson,     // independent exponential inter-arrivals per bot
};

struct BotnetConfig {
    std::uint32_t size = 0;
    Scheduling scheduling = Scheduling::Poisson;
    double rate = 1.0; // per-bot transmission rate
    std::vector<double> per_bot_rates; // optional per-bot override, Poisson only
    EmulationDictionary dictionary;
};

/// Synthetic stand-in for ordinary users: each user runs an independent
/// Poisson clock and picks, per transmission, from a private linearly
/// growing pool (probability 1 - p_share) or from one pool shared by all
/// normal users (probability p_share). Private pools are pairwise disjoint
/// by construction, so p_share alone controls how much the dictionaries of
/// distinct users can overlap.
struct NormalConfig {
    std::uint32_t count = 0;
    double rate = 1.0;         // per-user transmission rate
    double private_rate = 5.0; // private pool growth, messages/second
    double shared_rate = 5.0;  // shared pool growth, messages/second
    double p_share = 0.1;      // in [0, 1)
};

struct SimConfig {
    BotnetConfig botnet;
    NormalConfig normal;
    double horizon = 120.0;
    std::uint64_t seed = 0;
};

enum class UserLabel : std::uint8_t { Normal = 0, Bot = 1 };

/// A trace with ground truth: labels[u] tells whether user u is a bot.
struct LabeledTrace {
    std::vector<TraceEvent> events;
    std::vector<UserLabel> labels;

    std::uint32_t n_users() const { return static_cast<std::uint32_t>(labels.size()); }
};

/// Botnet traffic under the randomized-picking model: at each transmission
/// epoch t the bot draws uniformly from the floor(e0 + alpha t) currently
/// available dictionary entries. Bot users are indexed 0..size-1.
std::vector<TraceEvent> generate_botnet_trace(const BotnetConfig& cfg, double horizon, Rng& rng);

/// Normal-user traffic per NormalConfig. Users are indexed 0..count-1.
std::vector<TraceEvent> generate_normal_trace(const NormalConfig& cfg, double horizon, Rng& rng);

/// Merges two time-sorted traces into one. The user index spaces must
/// already be disjoint (events are not re-numbered here).
std::vector<TraceEvent> merge_traces(std::vector<TraceEvent> a, std::vector<TraceEvent> b);

/// Full generative pipeline: bots at indices 0..B-1, normal users after
/// them, merged into one time-sorted labeled trace. Identical configs
/// (including seed) reproduce bit-identical traces.
LabeledTrace generate(const SimConfig& cfg);

/// Relabels users by a uniformly random permutation, so user index carries
/// no information about the ground truth. Used by the evaluation harness.
LabeledTrace shuffle_users(LabeledTrace trace, Rng& rng);

/// Flat key=value description of the resolved config, echoed into output
/// artifacts.
std::vector<std::pair<std::string, std::string>> describe(const SimConfig& cfg);

void validate(const SimConfig& cfg);

} // namespace botbuster
