#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "botbuster/errors.hpp"

namespace botbuster {

/// Parameters of the contraction recursion
///
///   f_n = eta_n * f_{n-1} + b,   eta_n = 1 - 1/(c + a n)
///
/// which governs the mean dictionary growth of the slotted botnet process.
/// Requires a > 0, c > 0 and c + a > 1 so that eta_n stays inside (0, 1)
/// for every n >= 1; f_n / n then converges to a b / (1 + a).
struct RecursionParams {
    double a = 1.0;
    double b = 1.0;
    double c = 2.0;
    double f0 = 0.0;
    std::uint64_t n_max = 1000;
};

void validate(const RecursionParams& params);

/// Step factor eta_n.
double recursion_eta(const RecursionParams& params, std::uint64_t n);

/// Asymptotic slope a b / (1 + a) of f_n.
double recursion_limit_slope(const RecursionParams& params);

/// Iterates the recursion; element k holds f_{k+1}, for n = 1..n_max.
std::vector<double> recurse(const RecursionParams& params);

/// Non-iterative explicit form
///
///   f_n = f0 * P_n + (a b / (1 + a)) * [ n + (1 + c/a) (1 - P_n) ],
///   P_n = prod_{l=1..n} eta_l,
///
/// with the product accumulated in log space so it underflows gracefully
/// at large n. Agrees with recurse() to 1e-8 relative; the agreement is
/// the executable form of the induction proof.
double closed_form(const RecursionParams& params, std::uint64_t n);

/// closed_form for every n = 1..n_max with a running log-product.
std::vector<double> closed_form_sequence(const RecursionParams& params);

struct PerturbedBounds {
    double limsup_estimate = 0.0;   // max of f_n/n over the tail window
    double liminf_estimate = 0.0;   // min of f_n/n over the tail window
    bool perturbation_vanishing = true;
};

/// Iterates f_n = f_{n-1} (1 - 1/(a n + o_n(n))) + b + o_1(n) at equality
/// (the worst case of the perturbed inequality) and reports the envelope
/// of f_n/n over the last half of the run. For perturbations that vanish
/// as o(n) and o(1) the envelope closes on a b / (1 + a); non-vanishing
/// perturbations are flagged via a finite-n spot check, not proven.
PerturbedBounds perturbed_bounds(double a, double b,
                                 const std::function<double(std::uint64_t)>& o_n,
                                 const std::function<double(std::uint64_t)>& o_1,
                                 std::uint64_t n_max);

} // namespace botbuster
