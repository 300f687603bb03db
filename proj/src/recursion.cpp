#include "botbuster/recursion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace botbuster {

void validate(const RecursionParams& params)
{
    if (!(params.a > 0.0) || !(params.c > 0.0)) {
        fail(ErrorCategory::Domain, "recursion requires a > 0 and c > 0");
    }
    if (!(params.c + params.a > 1.0)) {
        fail(ErrorCategory::Domain, "recursion requires c + a > 1 so eta_1 > 0");
    }
    if (params.n_max == 0) {
        fail(ErrorCategory::Domain, "n_max must be positive");
    }
}

double recursion_eta(const RecursionParams& params, std::uint64_t n)
{
    return 1.0 - 1.0 / (params.c + params.a * static_cast<double>(n));
}

double recursion_limit_slope(const RecursionParams& params)
{
    return params.a * params.b / (1.0 + params.a);
}

std::vector<double> recurse(const RecursionParams& params)
{
    validate(params);
    std::vector<double> f(params.n_max);
    double prev = params.f0;
    for (std::uint64_t n = 1; n <= params.n_max; ++n) {
        prev = recursion_eta(params, n) * prev + params.b;
        f[n - 1] = prev;
    }
    return f;
}

double closed_form(const RecursionParams& params, std::uint64_t n)
{
    validate(params);
    if (n == 0 || n > params.n_max) {
        fail(ErrorCategory::Domain, "n must lie in 1..n_max");
    }
    double log_prod = 0.0;
    for (std::uint64_t l = 1; l <= n; ++l) {
        log_prod += std::log(recursion_eta(params, l));
    }
    const double prod = std::exp(log_prod);
    const double slope = recursion_limit_slope(params);
    return params.f0 * prod
        + slope * (static_cast<double>(n) + (1.0 + params.c / params.a) * (1.0 - prod));
}

std::vector<double> closed_form_sequence(const RecursionParams& params)
{
    validate(params);
    std::vector<double> f(params.n_max);
    const double slope = recursion_limit_slope(params);
    double log_prod = 0.0;
    for (std::uint64_t n = 1; n <= params.n_max; ++n) {
        log_prod += std::log(recursion_eta(params, n));
        const double prod = std::exp(log_prod);
        f[n - 1] = params.f0 * prod
            + slope * (static_cast<double>(n) + (1.0 + params.c / params.a) * (1.0 - prod));
    }
    return f;
}

PerturbedBounds perturbed_bounds(double a, double b,
                                 const std::function<double(std::uint64_t)>& o_n,
                                 const std::function<double(std::uint64_t)>& o_1,
                                 std::uint64_t n_max)
{
    if (!(a > 0.0)) {
        fail(ErrorCategory::Domain, "perturbed recursion requires a > 0");
    }
    if (n_max < 16) {
        fail(ErrorCategory::Domain, "n_max too small for an envelope estimate");
    }

    // The perturbed bound only constrains large n; iterate from the first
    // step whose factor lies inside [0, 1).
    std::uint64_t n_start = 1;
    while (n_start <= n_max && !(a * static_cast<double>(n_start) + o_n(n_start) >= 1.0)) {
        ++n_start;
    }
    if (n_start > n_max / 4) {
        fail(ErrorCategory::Domain,
             "step factor stays outside [0,1) for most of the range; "
             "perturbation too large");
    }

    PerturbedBounds out;
    double f = 0.0;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    const std::uint64_t tail_start = n_max / 2;
    for (std::uint64_t n = n_start; n <= n_max; ++n) {
        const double denom = a * static_cast<double>(n) + o_n(n);
        f = f * (1.0 - 1.0 / denom) + b + o_1(n);
        if (n >= tail_start) {
            const double ratio = f / static_cast<double>(n);
            lo = std::min(lo, ratio);
            hi = std::max(hi, ratio);
        }
    }
    out.limsup_estimate = hi;
    out.liminf_estimate = lo;

    // Finite-n spot check that the perturbations actually fade. Asymptotic
    // order cannot be verified at finite n; this only catches gross misuse.
    const double scale_b = std::abs(b) > 0.0 ? std::abs(b) : 1.0;
    out.perturbation_vanishing = std::abs(o_n(n_max)) <= 0.05 * a * static_cast<double>(n_max)
        && std::abs(o_1(n_max)) <= 0.05 * scale_b;
    return out;
}

} // namespace botbuster
