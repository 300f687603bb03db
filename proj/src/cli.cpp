#include "botbuster/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "botbuster/detect.hpp"
#include "botbuster/format.hpp"
#include "botbuster/io.hpp"
#include "botbuster/recursion.hpp"

namespace botbuster::cli {

namespace {

using Echo = std::vector<std::pair<std::string, std::string>>;

// Writes to the given path, or to stdout when the path is empty.
class Output {
public:
    explicit Output(const std::string& path)
    {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) {
                fail(ErrorCategory::Io, "cannot open '" + path + "' for writing");
            }
        }
    }

    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

void write_echo(std::ostream& out, const Echo& echo)
{
    for (const auto& [key, value] : echo) {
        out << "# " << key << " = " << value << "\n";
    }
}

// Simulation parameters as optional flag overrides on top of a config
// file; a flag always wins over the file.
struct SimFlags {
    std::string config_path;
    std::optional<std::uint64_t> bots;
    std::optional<std::string> scheduling;
    std::optional<double> bot_rate;
    std::optional<double> alpha;
    std::optional<std::uint64_t> e0;
    std::optional<std::uint64_t> normals;
    std::optional<double> normal_rate;
    std::optional<double> private_rate;
    std::optional<double> shared_rate;
    std::optional<double> p_share;
    std::optional<double> horizon;
    std::optional<std::uint64_t> seed;

    SimConfig resolve() const
    {
        SimConfig cfg;
        if (!config_path.empty()) {
            for (const auto& [key, value] : read_key_values(config_path)) {
                apply_sim_key(cfg, key, value);
            }
        }
        auto set = [&cfg](const std::string& key, const auto& opt) {
            if (opt.has_value()) {
                using T = std::decay_t<decltype(*opt)>;
                if constexpr (std::is_same_v<T, std::string>) {
                    apply_sim_key(cfg, key, *opt);
                } else if constexpr (std::is_integral_v<T>) {
                    apply_sim_key(cfg, key, std::to_string(*opt));
                } else {
                    apply_sim_key(cfg, key, format_double(*opt));
                }
            }
        };
        set("botnet.size", bots);
        set("botnet.scheduling", scheduling);
        set("botnet.rate", bot_rate);
        set("botnet.alpha", alpha);
        set("botnet.e0", e0);
        set("normal.count", normals);
        set("normal.rate", normal_rate);
        set("normal.private_rate", private_rate);
        set("normal.shared_rate", shared_rate);
        set("normal.p_share", p_share);
        set("horizon", horizon);
        set("seed", seed);
        validate(cfg);
        return cfg;
    }
};

void add_sim_options(CLI::App* cmd, SimFlags& flags)
{
    cmd->add_option("--config", flags.config_path, "flat key = value config file");
    cmd->add_option("--bots", flags.bots, "botnet size B");
    cmd->add_option("--scheduling", flags.scheduling, "synchronous|poisson");
    cmd->add_option("--bot-rate", flags.bot_rate, "per-bot transmission rate (events/s)");
    cmd->add_option("--alpha", flags.alpha, "emulation dictionary rate (messages/s)");
    cmd->add_option("--e0", flags.e0, "initial emulation dictionary size");
    cmd->add_option("--normals", flags.normals, "number of normal users");
    cmd->add_option("--normal-rate", flags.normal_rate, "per-user transmission rate (events/s)");
    cmd->add_option("--private-rate", flags.private_rate, "private pool growth (messages/s)");
    cmd->add_option("--shared-rate", flags.shared_rate, "shared pool growth (messages/s)");
    cmd->add_option("--p-share", flags.p_share, "probability of a shared-pool pick");
    cmd->add_option("--horizon", flags.horizon, "trace duration (s)");
    cmd->add_option("--seed", flags.seed, "base RNG seed");
}

std::uint32_t infer_users(std::span<const TraceEvent> events, std::uint64_t flag_value)
{
    if (flag_value > 0) {
        return static_cast<std::uint32_t>(flag_value);
    }
    std::uint32_t max_user = 0;
    for (const auto& ev : events) {
        max_user = std::max(max_user, ev.user);
    }
    return events.empty() ? 0 : max_user + 1;
}

int cmd_simulate(const SimFlags& flags, const std::string& out_path, std::string labels_path)
{
    const SimConfig cfg = flags.resolve();
    const LabeledTrace trace = generate(cfg);
    const Echo echo = describe(cfg);
    write_trace_file(out_path, trace.events, echo);
    if (labels_path.empty()) {
        labels_path = out_path + ".labels";
    }
    write_labels_file(labels_path, trace.labels, echo);
    std::cerr << "wrote " << trace.events.size() << " events for " << trace.n_users()
              << " users to " << out_path << "\n";
    return 0;
}

int cmd_indicators(const std::string& trace_path, const std::string& subnet_spec,
                   const std::string& grid_spec, const std::string& out_path)
{
    const auto events = read_trace_file(trace_path);
    const Subnet subnet = parse_subnet(subnet_spec);
    const auto grid = parse_grid(grid_spec);

    Output out(out_path);
    write_echo(out.stream(), {{"trace", trace_path}, {"subnet", subnet_spec}, {"grid", grid_spec}});
    out.stream() << "t,lambda_hat,rho_hat,alpha_hat\n";
    SubnetStats stats;
    std::size_t cursor = 0;
    for (double t : grid) {
        while (cursor < events.size() && events[cursor].time <= t) {
            fold_event(stats, events[cursor], subnet);
            ++cursor;
        }
        advance_horizon(stats, t);
        const Indicators ind = compute_indicators(stats);
        out.stream() << format_double(t) << ',' << format_double(ind.lambda_hat) << ','
                     << format_double(ind.rho_hat) << ',' << format_double(ind.alpha_hat) << "\n";
    }
    return 0;
}

int cmd_bic(const std::string& trace_path, const std::string& s1_spec, const std::string& s2_spec,
            double epsilon, double at, const std::string& grid_spec, const std::string& out_path)
{
    const auto events = read_trace_file(trace_path);
    const Subnet s1 = parse_subnet(s1_spec);
    const Subnet s2 = parse_subnet(s2_spec);
    Output out(out_path);
    const Echo echo = {{"trace", trace_path},
                       {"s1", s1_spec},
                       {"s2", s2_spec},
                       {"epsilon", format_double(epsilon)}};

    if (!grid_spec.empty()) {
        const auto grid = parse_grid(grid_spec);
        write_echo(out.stream(), echo);
        out.stream() << "t,rho_union,rho_bot,rho_sum,gamma\n";
        for (double t : grid) {
            const UnionStats stats = union_stats(events, s1, s2, t);
            const BicResult res = bic_check(stats.s1, stats.s2, stats.joint, epsilon);
            out.stream() << format_double(t) << ',' << format_double(res.rho_union) << ','
                         << format_double(res.rr.rho_bot) << ',' << format_double(res.rr.rho_sum)
                         << ',' << format_double(res.rr.gamma) << "\n";
        }
        return 0;
    }

    const UnionStats stats = union_stats(events, s1, s2, at);
    const BicResult res = bic_check(stats.s1, stats.s2, stats.joint, epsilon);
    write_echo(out.stream(), echo);
    out.stream() << "t = " << format_double(at) << "\n"
                 << "rho_union = " << format_double(res.rho_union) << "\n"
                 << "rho_bot = " << format_double(res.rr.rho_bot) << "\n"
                 << "rho_sum = " << format_double(res.rr.rho_sum) << "\n"
                 << "gamma = " << format_double(res.rr.gamma) << "\n"
                 << "delta_star = " << format_double(res.rr.delta_star) << "\n"
                 << "alpha_prime = " << format_double(res.rr.alpha_prime) << "\n"
                 << "decision = " << to_string(res.decision) << "\n";
    return 0;
}

int cmd_detect(const std::string& trace_path, std::uint64_t users, double at, double epsilon,
               const std::string& out_path)
{
    const auto events = read_trace_file(trace_path);
    const std::uint32_t n_users = infer_users(events, users);
    const BotnetEstimate est = botbuster(events, n_users, at, epsilon);

    Output out(out_path);
    write_echo(out.stream(), {{"trace", trace_path},
                              {"users", std::to_string(n_users)},
                              {"t", format_double(at)},
                              {"epsilon", format_double(epsilon)}});
    for (const auto& diag : est.per_pivot) {
        out.stream() << "# pivot=" << diag.pivot << " size=" << diag.inner_size
                     << " best=" << (diag.became_best ? "yes" : "no") << "\n";
    }
    out.stream() << "# banned_count = " << est.banned.size() << "\n";
    for (std::uint32_t u : est.banned) {
        out.stream() << u << "\n";
    }
    return 0;
}

int cmd_evaluate(const SimFlags& flags, const std::string& grid_spec, std::uint64_t trials,
                 double epsilon, unsigned jobs, const std::string& out_path)
{
    const SimConfig cfg = flags.resolve();
    const auto grid = parse_grid(grid_spec);
    EvalReport report = evaluate(cfg, grid, epsilon, static_cast<std::uint32_t>(trials), jobs);
    report.config_echo.emplace_back("grid", grid_spec);
    report.config_echo.emplace_back("jobs", std::to_string(jobs));

    Output out(out_path);
    write_echo(out.stream(), report.config_echo);
    out.stream() << "t,eta_bot,eta_nor\n";
    for (std::size_t g = 0; g < report.grid.size(); ++g) {
        out.stream() << format_double(report.grid[g]) << ',' << format_double(report.eta_bot[g])
                     << ',' << format_double(report.eta_nor[g]) << "\n";
    }
    return 0;
}

int cmd_oracle(double a, double b, double c, double f0, std::uint64_t n_max, std::uint64_t stride,
               const std::string& out_path)
{
    RecursionParams params{a, b, c, f0, n_max};
    const auto f = recurse(params);
    Output out(out_path);
    write_echo(out.stream(), {{"a", format_double(a)},
                              {"b", format_double(b)},
                              {"c", format_double(c)},
                              {"f0", format_double(f0)},
                              {"n_max", std::to_string(n_max)},
                              {"limit_slope", format_double(recursion_limit_slope(params))}});
    out.stream() << "n,f_n,f_n_over_n\n";
    if (stride == 0) {
        stride = 1;
    }
    for (std::uint64_t n = 1; n <= n_max; ++n) {
        if (n % stride == 0 || n == n_max) {
            out.stream() << n << ',' << format_double(f[n - 1]) << ','
                         << format_double(f[n - 1] / static_cast<double>(n)) << "\n";
        }
    }
    return 0;
}

} // namespace

int run(const std::vector<std::string>& args)
{
    CLI::App app{"randomized-DDoS botnet identification toolkit"};
    app.require_subcommand(1);

    // simulate
    SimFlags sim_flags;
    std::string sim_out, sim_labels;
    auto* simulate = app.add_subcommand("simulate", "generate a labeled synthetic trace");
    add_sim_options(simulate, sim_flags);
    simulate->add_option("--out", sim_out, "trace file to write")->required();
    simulate->add_option("--labels", sim_labels, "label sidecar (default: <out>.labels)");

    // indicators
    std::string ind_trace, ind_subnet, ind_grid = "1:1:120", ind_out;
    auto* indicators = app.add_subcommand("indicators", "emit t,lambda_hat,rho_hat,alpha_hat");
    indicators->add_option("--trace", ind_trace, "trace file")->required();
    indicators->add_option("--subnet", ind_subnet, "user list, e.g. 0,1,4-7")->required();
    indicators->add_option("--grid", ind_grid, "start:step:end or comma list");
    indicators->add_option("--out", ind_out, "output CSV (default stdout)");

    // bic
    std::string bic_trace, bic_s1, bic_s2, bic_grid, bic_out;
    double bic_eps = 0.2, bic_at = 0.0;
    auto* bic = app.add_subcommand("bic", "pairwise botnet identification check");
    bic->add_option("--trace", bic_trace, "trace file")->required();
    bic->add_option("--s1", bic_s1, "first subnet")->required();
    bic->add_option("--s2", bic_s2, "second subnet")->required();
    bic->add_option("--epsilon", bic_eps, "threshold parameter in (0,1)");
    bic->add_option("--at", bic_at, "evaluation time (s)");
    bic->add_option("--grid", bic_grid, "emit a time series instead of one decision");
    bic->add_option("--out", bic_out, "output file (default stdout)");

    // detect
    std::string det_trace, det_out;
    std::uint64_t det_users = 0;
    double det_at = 0.0, det_eps = 0.2;
    auto* detect = app.add_subcommand("detect", "run the identification algorithm");
    detect->add_option("--trace", det_trace, "trace file")->required();
    detect->add_option("--users", det_users, "network size N (default: inferred)");
    detect->add_option("--at", det_at, "evaluation time (s)")->required();
    detect->add_option("--epsilon", det_eps, "threshold parameter in (0,1)");
    detect->add_option("--out", det_out, "output file (default stdout)");

    // evaluate
    SimFlags eval_flags;
    std::string eval_grid = "1:1:120", eval_out;
    std::uint64_t eval_trials = 100;
    double eval_eps = 0.2;
    unsigned eval_jobs = 0;
    auto* evaluate = app.add_subcommand("evaluate", "Monte Carlo eta_bot/eta_nor curves");
    add_sim_options(evaluate, eval_flags);
    evaluate->add_option("--grid", eval_grid, "start:step:end or comma list");
    evaluate->add_option("--trials", eval_trials, "number of Monte Carlo trials");
    evaluate->add_option("--epsilon", eval_eps, "threshold parameter in (0,1)");
    evaluate->add_option("--jobs", eval_jobs, "worker threads (0 = all cores)");
    evaluate->add_option("--out", eval_out, "output CSV (default stdout)");

    // oracle
    double ora_a = 1.0, ora_b = 1.0, ora_c = 2.0, ora_f0 = 0.0;
    std::uint64_t ora_n = 1000, ora_stride = 1;
    std::string ora_out;
    auto* oracle = app.add_subcommand("oracle", "evaluate the dictionary-growth recursion");
    oracle->add_option("--a", ora_a, "slope coefficient a > 0");
    oracle->add_option("--b", ora_b, "additive term b");
    oracle->add_option("--c", ora_c, "offset c > 0, with c + a > 1");
    oracle->add_option("--f0", ora_f0, "initial value f_0");
    oracle->add_option("--n-max", ora_n, "number of steps");
    oracle->add_option("--stride", ora_stride, "emit every k-th row");
    oracle->add_option("--out", ora_out, "output CSV (default stdout)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) { // --help
            return app.exit(e);
        }
        std::cerr << "error: usage: " << e.what() << "\n";
        return 2;
    }

    try {
        if (simulate->parsed()) {
            return cmd_simulate(sim_flags, sim_out, sim_labels);
        }
        if (indicators->parsed()) {
            return cmd_indicators(ind_trace, ind_subnet, ind_grid, ind_out);
        }
        if (bic->parsed()) {
            if (bic_grid.empty() && !(bic_at > 0.0)) {
                fail(ErrorCategory::Usage, "bic needs --at or --grid");
            }
            return cmd_bic(bic_trace, bic_s1, bic_s2, bic_eps, bic_at, bic_grid, bic_out);
        }
        if (detect->parsed()) {
            return cmd_detect(det_trace, det_users, det_at, det_eps, det_out);
        }
        if (evaluate->parsed()) {
            return cmd_evaluate(eval_flags, eval_grid, eval_trials, eval_eps, eval_jobs, eval_out);
        }
        if (oracle->parsed()) {
            return cmd_oracle(ora_a, ora_b, ora_c, ora_f0, ora_n, ora_stride, ora_out);
        }
        fail(ErrorCategory::Usage, "no subcommand given");
    } catch (const Error& e) {
        std::cerr << "error: " << to_string(e.category()) << ": " << e.what() << "\n";
        return e.category() == ErrorCategory::Usage ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: internal: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

int run(int argc, const char* const* argv)
{
    std::vector<std::string> args;
    args.reserve(static_cast<std::size_t>(argc > 0 ? argc - 1 : 0));
    for (int i = 1; i < argc; ++i) {
        args.emplace_back(argv[i]);
    }
    return run(args);
}

} // namespace botbuster::cli
