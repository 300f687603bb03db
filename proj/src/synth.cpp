#include "botbuster/synth.hpp"

#include <algorithm>
#include <unordered_set>

#include "botbuster/format.hpp"

namespace botbuster {

namespace {

// Synthetic message-id layout. Botnet dictionary indices occupy the low
// range; normal-user pools live in disjoint high ranges so that a bot and
// a normal user can never collide on a message id.
constexpr MessageId kSharedPoolBase = MessageId{1} << 40;
constexpr MessageId kPrivatePoolBase = MessageId{1} << 41;
constexpr MessageId kPrivatePoolStride = MessageId{1} << 32;

// The shared pool models pre-existing common material (popular pages,
// common interests), so it does not start empty; a near-empty early pool
// would force collisions between users in the first seconds, which is an
// artifact rather than physiology. Private pools start at one entry.
constexpr std::uint64_t kSharedPoolInitial = 100;

std::uint64_t pool_size(std::uint64_t initial, double rate, double t)
{
    return initial + static_cast<std::uint64_t>(rate * t);
}

std::vector<double> poisson_epochs(double rate, double horizon, Rng& rng)
{
    std::vector<double> epochs;
    epochs.reserve(static_cast<std::size_t>(rate * horizon * 1.2) + 4);
    double t = rng.exponential(rate);
    while (t <= horizon) {
        epochs.push_back(t);
        t += rng.exponential(rate);
    }
    return epochs;
}

void sort_by_time(std::vector<TraceEvent>& events)
{
    std::stable_sort(events.begin(), events.end(),
                     [](const TraceEvent& a, const TraceEvent& b) { return a.time < b.time; });
}

} // namespace

std::vector<TraceEvent> generate_botnet_trace(const BotnetConfig& cfg, double horizon, Rng& rng)
{
    if (!(horizon > 0.0)) {
        fail(ErrorCategory::Config, "horizon must be positive");
    }
    std::vector<TraceEvent> events;
    if (cfg.size == 0) {
        return events;
    }
    if (!cfg.per_bot_rates.empty() && cfg.per_bot_rates.size() != cfg.size) {
        fail(ErrorCategory::Config, "per-bot rate list must match botnet size");
    }
    if (!cfg.per_bot_rates.empty() && cfg.scheduling != Scheduling::Poisson) {
        fail(ErrorCategory::Config, "per-bot rates require Poisson scheduling");
    }
    if (cfg.dictionary.alpha < 0.0) {
        fail(ErrorCategory::Config, "dictionary rate must be nonnegative");
    }

    const std::uint64_t base = rng.next_u64();
    if (cfg.scheduling == Scheduling::Synchronous) {
        if (!(cfg.rate > 0.0)) {
            fail(ErrorCategory::Config, "synchronous rate must be positive");
        }
        std::vector<Rng> pick(cfg.size, Rng(0));
        for (std::uint32_t u = 0; u < cfg.size; ++u) {
            pick[u] = Rng(mix_seed(base, u));
        }
        for (std::uint64_t k = 1;; ++k) {
            const double t = static_cast<double>(k) / cfg.rate;
            if (t > horizon) {
                break;
            }
            const std::uint64_t avail = cfg.dictionary.size_at(t);
            for (std::uint32_t u = 0; u < cfg.size; ++u) {
                events.push_back({t, u, pick[u].uniform_index(avail)});
            }
        }
        return events;
    }

    for (std::uint32_t u = 0; u < cfg.size; ++u) {
        const double rate = cfg.per_bot_rates.empty() ? cfg.rate : cfg.per_bot_rates[u];
        if (!(rate > 0.0)) {
            fail(ErrorCategory::Config, "per-bot rate must be positive");
        }
        Rng user_rng(mix_seed(base, u));
        for (double t : poisson_epochs(rate, horizon, user_rng)) {
            events.push_back({t, u, user_rng.uniform_index(cfg.dictionary.size_at(t))});
        }
    }
    sort_by_time(events);
    return events;
}

std::vector<TraceEvent> generate_normal_trace(const NormalConfig& cfg, double horizon, Rng& rng)
{
    if (!(horizon > 0.0)) {
        fail(ErrorCategory::Config, "horizon must be positive");
    }
    std::vector<TraceEvent> events;
    if (cfg.count == 0) {
        return events;
    }
    if (!(cfg.rate > 0.0)) {
        fail(ErrorCategory::Config, "normal-user rate must be positive");
    }
    if (cfg.p_share < 0.0 || cfg.p_share >= 1.0) {
        fail(ErrorCategory::Config, "p_share must lie in [0, 1)");
    }
    if (cfg.private_rate < 0.0 || cfg.shared_rate < 0.0) {
        fail(ErrorCategory::Config, "pool growth rates must be nonnegative");
    }

    const std::uint64_t base = rng.next_u64();
    for (std::uint32_t u = 0; u < cfg.count; ++u) {
        Rng user_rng(mix_seed(base, u));
        const MessageId private_base = kPrivatePoolBase + MessageId{u} * kPrivatePoolStride;
        for (double t : poisson_epochs(cfg.rate, horizon, user_rng)) {
            MessageId msg;
            if (user_rng.uniform() < cfg.p_share) {
                msg = kSharedPoolBase
                    + user_rng.uniform_index(pool_size(kSharedPoolInitial, cfg.shared_rate, t));
            } else {
                msg = private_base + user_rng.uniform_index(pool_size(1, cfg.private_rate, t));
            }
            events.push_back({t, u, msg});
        }
    }
    sort_by_time(events);
    return events;
}

std::vector<TraceEvent> merge_traces(std::vector<TraceEvent> a, std::vector<TraceEvent> b)
{
    auto sorted = [](const std::vector<TraceEvent>& ev) {
        return std::is_sorted(ev.begin(), ev.end(),
                              [](const TraceEvent& x, const TraceEvent& y) { return x.time < y.time; });
    };
    if (!sorted(a) || !sorted(b)) {
        fail(ErrorCategory::Merge, "merge inputs must be time-sorted");
    }
    std::unordered_set<std::uint32_t> users_a;
    for (const auto& ev : a) {
        users_a.insert(ev.user);
    }
    for (const auto& ev : b) {
        if (users_a.count(ev.user)) {
            fail(ErrorCategory::Merge,
                 "user index collision on user " + std::to_string(ev.user));
        }
    }
    std::vector<TraceEvent> out;
    out.reserve(a.size() + b.size());
    std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out),
               [](const TraceEvent& x, const TraceEvent& y) { return x.time < y.time; });
    return out;
}

void validate(const SimConfig& cfg)
{
    if (!(cfg.horizon > 0.0)) {
        fail(ErrorCategory::Config, "horizon must be positive");
    }
    if (cfg.botnet.size > 0 && cfg.botnet.per_bot_rates.empty() && !(cfg.botnet.rate > 0.0)) {
        fail(ErrorCategory::Config, "bot transmission rate must be positive");
    }
    if (cfg.normal.count > 0 && !(cfg.normal.rate > 0.0)) {
        fail(ErrorCategory::Config, "normal-user transmission rate must be positive");
    }
    if (cfg.normal.p_share < 0.0 || cfg.normal.p_share >= 1.0) {
        fail(ErrorCategory::Config, "p_share must lie in [0, 1)");
    }
    if (cfg.botnet.dictionary.alpha < 0.0) {
        fail(ErrorCategory::Config, "dictionary rate must be nonnegative");
    }
}

LabeledTrace generate(const SimConfig& cfg)
{
    validate(cfg);
    Rng bot_rng(mix_seed(cfg.seed, 0xb07));
    Rng normal_rng(mix_seed(cfg.seed, 0x40a));

    auto bot_events = generate_botnet_trace(cfg.botnet, cfg.horizon, bot_rng);
    auto normal_events = generate_normal_trace(cfg.normal, cfg.horizon, normal_rng);
    for (auto& ev : normal_events) {
        ev.user += cfg.botnet.size;
    }

    LabeledTrace trace;
    trace.events = merge_traces(std::move(bot_events), std::move(normal_events));
    trace.labels.assign(cfg.botnet.size, UserLabel::Bot);
    trace.labels.insert(trace.labels.end(), cfg.normal.count, UserLabel::Normal);
    return trace;
}

LabeledTrace shuffle_users(LabeledTrace trace, Rng& rng)
{
    const auto n = trace.n_users();
    std::vector<std::uint32_t> perm(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        perm[i] = i;
    }
    for (std::uint32_t i = n; i > 1; --i) {
        std::swap(perm[i - 1], perm[rng.uniform_index(i)]);
    }
    std::vector<UserLabel> labels(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        labels[perm[i]] = trace.labels[i];
    }
    trace.labels = std::move(labels);
    for (auto& ev : trace.events) {
        ev.user = perm[ev.user];
    }
    return trace;
}

std::vector<std::pair<std::string, std::string>> describe(const SimConfig& cfg)
{
    std::vector<std::pair<std::string, std::string>> kv;
    kv.emplace_back("botnet.size", std::to_string(cfg.botnet.size));
    kv.emplace_back("botnet.scheduling",
                    cfg.botnet.scheduling == Scheduling::Synchronous ? "synchronous" : "poisson");
    kv.emplace_back("botnet.rate", format_double(cfg.botnet.rate));
    kv.emplace_back("botnet.alpha", format_double(cfg.botnet.dictionary.alpha));
    kv.emplace_back("botnet.e0", std::to_string(cfg.botnet.dictionary.e0));
    kv.emplace_back("normal.count", std::to_string(cfg.normal.count));
    kv.emplace_back("normal.rate", format_double(cfg.normal.rate));
    kv.emplace_back("normal.private_rate", format_double(cfg.normal.private_rate));
    kv.emplace_back("normal.shared_rate", format_double(cfg.normal.shared_rate));
    kv.emplace_back("normal.p_share", format_double(cfg.normal.p_share));
    kv.emplace_back("horizon", format_double(cfg.horizon));
    kv.emplace_back("seed", std::to_string(cfg.seed));
    return kv;
}

} // namespace botbuster
