#include "botbuster/detect.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "botbuster/format.hpp"

namespace botbuster {

NetworkStats::NetworkStats(std::uint32_t n_users)
    : counts_(n_users, 0)
    , dicts_(n_users)
{
}

void NetworkStats::fold_until(std::span<const TraceEvent> trace, double t)
{
    if (t < horizon_) {
        fail(ErrorCategory::Ordering, "network horizon may only move forward");
    }
    while (cursor_ < trace.size() && trace[cursor_].time <= t) {
        const TraceEvent& ev = trace[cursor_];
        if (ev.time < horizon_) {
            fail(ErrorCategory::Ordering,
                 "out-of-order event at t=" + format_double(ev.time));
        }
        if (ev.user >= counts_.size()) {
            fail(ErrorCategory::Domain,
                 "event user " + std::to_string(ev.user) + " outside network of size "
                     + std::to_string(counts_.size()));
        }
        horizon_ = ev.time;
        ++counts_[ev.user];
        dicts_[ev.user].insert(ev.msg);
        ++cursor_;
    }
    horizon_ = t;
}

namespace {

std::uint64_t overlap_size(const std::unordered_set<MessageId>& a,
                           const std::unordered_set<MessageId>& b)
{
    const auto& small = a.size() <= b.size() ? a : b;
    const auto& large = a.size() <= b.size() ? b : a;
    std::uint64_t n = 0;
    for (MessageId m : small) {
        n += large.count(m);
    }
    return n;
}

} // namespace

BotnetEstimate botbuster(const NetworkStats& net, double epsilon)
{
    const std::uint32_t n = net.n_users();
    if (n < 2) {
        fail(ErrorCategory::Config, "identification needs at least two users");
    }
    const double t = net.horizon();
    if (!(t > 0.0)) {
        fail(ErrorCategory::Domain, "evaluation time must be positive");
    }

    BotnetEstimate est;
    est.eval_time = t;
    est.per_pivot.reserve(n);
    std::vector<std::uint32_t> best;

    std::vector<std::uint32_t> members;
    std::unordered_set<MessageId> cand_dict;
    for (std::uint32_t pivot = 0; pivot < n; ++pivot) {
        members.assign(1, pivot);
        std::uint64_t cand_count = net.count(pivot);
        cand_dict = net.dict(pivot);

        for (std::uint32_t j = 0; j < n; ++j) {
            if (j == pivot) {
                continue;
            }
            const auto& dict_j = net.dict(j);
            const Indicators i_cand = compute_indicators(cand_count, cand_dict.size(), t);
            const Indicators i_j = compute_indicators(net.count(j), dict_j.size(), t);
            const std::uint64_t union_size =
                cand_dict.size() + dict_j.size() - overlap_size(cand_dict, dict_j);
            const double rho_union = static_cast<double>(union_size) / t;

            const RrSolution rr = reference_quantities(i_cand, i_j, epsilon);
            const bool repeat_evidence = i_cand.alpha_finite() || i_j.alpha_finite();
            if (repeat_evidence && below_gamma(rho_union, rr)) {
                members.push_back(j);
                cand_count += net.count(j);
                cand_dict.insert(dict_j.begin(), dict_j.end());
            }
        }

        PivotDiagnostic diag;
        diag.pivot = pivot;
        diag.inner_size = static_cast<std::uint32_t>(members.size());
        if (members.size() > std::max<std::size_t>(1, best.size())) {
            best = members;
            diag.became_best = true;
        }
        est.per_pivot.push_back(diag);
    }

    std::sort(best.begin(), best.end());
    est.banned = std::move(best);
    return est;
}

BotnetEstimate botbuster(std::span<const TraceEvent> trace, std::uint32_t n_users, double t,
                         double epsilon)
{
    NetworkStats net(n_users);
    net.fold_until(trace, t);
    return botbuster(net, epsilon);
}

EvalReport evaluate(const SimConfig& sim, std::vector<double> grid, double epsilon,
                    std::uint32_t trials, unsigned jobs)
{
    if (trials < 1) {
        fail(ErrorCategory::Config, "at least one trial is required");
    }
    if (grid.empty()) {
        fail(ErrorCategory::Config, "evaluation grid must not be empty");
    }
    if (!std::is_sorted(grid.begin(), grid.end()) || !(grid.front() > 0.0)) {
        fail(ErrorCategory::Config, "grid times must be positive and ascending");
    }
    if (!(epsilon > 0.0) || !(epsilon < 1.0)) {
        fail(ErrorCategory::Config, "epsilon must lie strictly inside (0, 1)");
    }
    validate(sim);
    const std::uint32_t n_users = sim.botnet.size + sim.normal.count;
    if (n_users < 2) {
        fail(ErrorCategory::Config, "network must contain at least two users");
    }

    const double horizon = std::max(sim.horizon, grid.back());
    const std::uint32_t n_bots = sim.botnet.size;
    const std::uint32_t n_normal = sim.normal.count;

    // Per-trial rows, filled independently; the reduction below is
    // deterministic regardless of thread scheduling.
    std::vector<std::vector<double>> bot_rows(trials), nor_rows(trials);

    auto run_trial = [&](std::uint32_t trial) {
        SimConfig cfg = sim;
        cfg.seed = sim.seed + trial;
        cfg.horizon = horizon;
        Rng shuffle_rng(mix_seed(cfg.seed, 0x5f));
        LabeledTrace trace = shuffle_users(generate(cfg), shuffle_rng);

        NetworkStats net(n_users);
        auto& bots_banned = bot_rows[trial];
        auto& normals_banned = nor_rows[trial];
        bots_banned.assign(grid.size(), 0.0);
        normals_banned.assign(grid.size(), 0.0);
        for (std::size_t g = 0; g < grid.size(); ++g) {
            net.fold_until(trace.events, grid[g]);
            const BotnetEstimate est = botbuster(net, epsilon);
            std::uint64_t hit_bot = 0, hit_nor = 0;
            for (std::uint32_t u : est.banned) {
                (trace.labels[u] == UserLabel::Bot ? hit_bot : hit_nor) += 1;
            }
            if (n_bots > 0) {
                bots_banned[g] = static_cast<double>(hit_bot) / n_bots;
            }
            if (n_normal > 0) {
                normals_banned[g] = static_cast<double>(hit_nor) / n_normal;
            }
        }
    };

    unsigned workers = jobs == 0 ? std::thread::hardware_concurrency() : jobs;
    workers = std::max(1u, std::min<unsigned>(workers, trials));
    if (workers == 1) {
        for (std::uint32_t i = 0; i < trials; ++i) {
            run_trial(i);
        }
    } else {
        std::atomic<std::uint32_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::uint32_t i = next.fetch_add(1); i < trials; i = next.fetch_add(1)) {
                    run_trial(i);
                }
            });
        }
        for (auto& th : pool) {
            th.join();
        }
    }

    EvalReport report;
    report.grid = std::move(grid);
    report.trials = trials;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    report.eta_bot.assign(report.grid.size(), n_bots == 0 ? nan : 0.0);
    report.eta_nor.assign(report.grid.size(), n_normal == 0 ? nan : 0.0);
    for (std::uint32_t i = 0; i < trials; ++i) {
        for (std::size_t g = 0; g < report.grid.size(); ++g) {
            if (n_bots > 0) {
                report.eta_bot[g] += bot_rows[i][g] / trials;
            }
            if (n_normal > 0) {
                report.eta_nor[g] += nor_rows[i][g] / trials;
            }
        }
    }
    report.config_echo = describe(sim);
    report.config_echo.emplace_back("epsilon", format_double(epsilon));
    report.config_echo.emplace_back("trials", std::to_string(trials));
    return report;
}

} // namespace botbuster
