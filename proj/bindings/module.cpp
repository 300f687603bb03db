#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "botbuster/detect.hpp"
#include "botbuster/io.hpp"
#include "botbuster/recursion.hpp"

namespace py = pybind11;
using namespace botbuster;

namespace {

using PyEvent = std::tuple<double, std::uint32_t, std::uint64_t>;

std::vector<TraceEvent> to_events(const std::vector<PyEvent>& rows)
{
    std::vector<TraceEvent> events;
    events.reserve(rows.size());
    for (const auto& [t, u, m] : rows) {
        events.push_back({t, u, m});
    }
    return events;
}

std::vector<PyEvent> from_events(const std::vector<TraceEvent>& events)
{
    std::vector<PyEvent> rows;
    rows.reserve(events.size());
    for (const auto& ev : events) {
        rows.emplace_back(ev.time, ev.user, ev.msg);
    }
    return rows;
}

SimConfig make_config(std::uint32_t bots, const std::string& scheduling, double bot_rate,
                      double alpha, std::uint64_t e0, std::uint32_t normals, double normal_rate,
                      double private_rate, double shared_rate, double p_share, double horizon,
                      std::uint64_t seed)
{
    SimConfig cfg;
    cfg.botnet.size = bots;
    if (scheduling == "synchronous") {
        cfg.botnet.scheduling = Scheduling::Synchronous;
    } else if (scheduling == "poisson") {
        cfg.botnet.scheduling = Scheduling::Poisson;
    } else {
        fail(ErrorCategory::Config, "scheduling must be 'synchronous' or 'poisson'");
    }
    cfg.botnet.rate = bot_rate;
    cfg.botnet.dictionary.alpha = alpha;
    cfg.botnet.dictionary.e0 = e0;
    cfg.normal.count = normals;
    cfg.normal.rate = normal_rate;
    cfg.normal.private_rate = private_rate;
    cfg.normal.shared_rate = shared_rate;
    cfg.normal.p_share = p_share;
    cfg.horizon = horizon;
    cfg.seed = seed;
    return cfg;
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "botnet identification from message innovation rates";

    py::register_exception<Error>(m, "Error", PyExc_ValueError);

    py::class_<Indicators>(m, "Indicators")
        .def_readonly("lambda_hat", &Indicators::lambda_hat)
        .def_readonly("rho_hat", &Indicators::rho_hat)
        .def_readonly("alpha_hat", &Indicators::alpha_hat)
        .def("__repr__", [](const Indicators& i) {
            return "Indicators(lambda_hat=" + std::to_string(i.lambda_hat)
                + ", rho_hat=" + std::to_string(i.rho_hat)
                + ", alpha_hat=" + std::to_string(i.alpha_hat) + ")";
        });

    py::class_<RrSolution>(m, "RrSolution")
        .def_readonly("delta_star", &RrSolution::delta_star)
        .def_readonly("alpha_prime", &RrSolution::alpha_prime)
        .def_readonly("rho_bot", &RrSolution::rho_bot)
        .def_readonly("rho_sum", &RrSolution::rho_sum)
        .def_readonly("gamma", &RrSolution::gamma)
        .def_readonly("epsilon", &RrSolution::epsilon);

    m.def("r_function", &r_function, py::arg("alpha"), py::arg("lambda_"),
          "innovation-rate function alpha*lambda/(alpha+lambda)");

    m.def(
        "indicators",
        [](std::uint64_t n_events, std::uint64_t distinct, double t) {
            return compute_indicators(n_events, distinct, t);
        },
        py::arg("n_events"), py::arg("distinct"), py::arg("t"));

    m.def("solve_delta_star", &solve_delta_star, py::arg("i1"), py::arg("i2"));
    m.def("reference_quantities", &reference_quantities, py::arg("i1"), py::arg("i2"),
          py::arg("epsilon"));

    m.def(
        "simulate",
        [](std::uint32_t bots, const std::string& scheduling, double bot_rate, double alpha,
           std::uint64_t e0, std::uint32_t normals, double normal_rate, double private_rate,
           double shared_rate, double p_share, double horizon, std::uint64_t seed) {
            const LabeledTrace trace =
                generate(make_config(bots, scheduling, bot_rate, alpha, e0, normals, normal_rate,
                                     private_rate, shared_rate, p_share, horizon, seed));
            std::vector<int> labels;
            labels.reserve(trace.labels.size());
            for (UserLabel l : trace.labels) {
                labels.push_back(l == UserLabel::Bot ? 1 : 0);
            }
            return py::make_tuple(from_events(trace.events), labels);
        },
        py::arg("bots") = 0, py::arg("scheduling") = "poisson", py::arg("bot_rate") = 1.0,
        py::arg("alpha") = 10.0, py::arg("e0") = 100, py::arg("normals") = 0,
        py::arg("normal_rate") = 1.0, py::arg("private_rate") = 5.0, py::arg("shared_rate") = 5.0,
        py::arg("p_share") = 0.1, py::arg("horizon") = 120.0, py::arg("seed") = 0,
        "generate a labeled trace; returns (events, labels) with events as "
        "(time, user, msg) tuples and labels[u] == 1 for bots");

    m.def(
        "detect",
        [](const std::vector<PyEvent>& rows, std::uint32_t n_users, double t, double epsilon) {
            const auto events = to_events(rows);
            return botbuster::botbuster(events, n_users, t, epsilon).banned;
        },
        py::arg("events"), py::arg("n_users"), py::arg("t"), py::arg("epsilon") = 0.2,
        "run the identification algorithm; returns the banned user indices");

    m.def(
        "evaluate",
        [](std::uint32_t bots, const std::string& scheduling, double bot_rate, double alpha,
           std::uint64_t e0, std::uint32_t normals, double normal_rate, double private_rate,
           double shared_rate, double p_share, double horizon, std::uint64_t seed,
           std::vector<double> grid, double epsilon, std::uint32_t trials, unsigned jobs) {
            const EvalReport rep =
                evaluate(make_config(bots, scheduling, bot_rate, alpha, e0, normals, normal_rate,
                                     private_rate, shared_rate, p_share, horizon, seed),
                         std::move(grid), epsilon, trials, jobs);
            py::dict out;
            out["grid"] = rep.grid;
            out["eta_bot"] = rep.eta_bot;
            out["eta_nor"] = rep.eta_nor;
            out["trials"] = rep.trials;
            return out;
        },
        py::arg("bots") = 0, py::arg("scheduling") = "poisson", py::arg("bot_rate") = 1.0,
        py::arg("alpha") = 10.0, py::arg("e0") = 100, py::arg("normals") = 0,
        py::arg("normal_rate") = 1.0, py::arg("private_rate") = 5.0, py::arg("shared_rate") = 5.0,
        py::arg("p_share") = 0.1, py::arg("horizon") = 120.0, py::arg("seed") = 0,
        py::arg("grid") = std::vector<double>{60.0, 120.0}, py::arg("epsilon") = 0.2,
        py::arg("trials") = 10, py::arg("jobs") = 0,
        "Monte Carlo detection curves; returns {grid, eta_bot, eta_nor, trials}");

    m.def(
        "bic_pair",
        [](const std::vector<PyEvent>& rows, const std::vector<std::uint32_t>& s1,
           const std::vector<std::uint32_t>& s2, double t, double epsilon) {
            const auto events = to_events(rows);
            Subnet a, b;
            a.members = s1;
            b.members = s2;
            const UnionStats stats = union_stats(events, a, b, t);
            const BicResult res = bic_check(stats.s1, stats.s2, stats.joint, epsilon);
            py::dict out;
            out["decision"] = std::string(to_string(res.decision));
            out["rho_union"] = res.rho_union;
            out["rho_bot"] = res.rr.rho_bot;
            out["rho_sum"] = res.rr.rho_sum;
            out["gamma"] = res.rr.gamma;
            out["delta_star"] = res.rr.delta_star;
            out["alpha_prime"] = res.rr.alpha_prime;
            return out;
        },
        py::arg("events"), py::arg("s1"), py::arg("s2"), py::arg("t"), py::arg("epsilon") = 0.2,
        "pairwise identification check between two disjoint subnets");

    m.def(
        "recurse",
        [](double a, double b, double c, double f0, std::uint64_t n_max) {
            return recurse(RecursionParams{a, b, c, f0, n_max});
        },
        py::arg("a"), py::arg("b"), py::arg("c"), py::arg("f0") = 0.0, py::arg("n_max") = 1000);

    m.def(
        "closed_form",
        [](double a, double b, double c, double f0, std::uint64_t n) {
            return closed_form(RecursionParams{a, b, c, f0, n}, n);
        },
        py::arg("a"), py::arg("b"), py::arg("c"), py::arg("f0"), py::arg("n"));

    m.def(
        "limit_slope",
        [](double a, double b) {
            return recursion_limit_slope(RecursionParams{a, b, 2.0, 0.0, 1});
        },
        py::arg("a"), py::arg("b"));

    m.def(
        "read_trace",
        [](const std::string& path) { return from_events(read_trace_file(path)); },
        py::arg("path"));

    m.def(
        "write_trace",
        [](const std::string& path, const std::vector<PyEvent>& rows) {
            write_trace_file(path, to_events(rows), {});
        },
        py::arg("path"), py::arg("events"));

    m.attr("__version__") = "0.1.0";
}
