#include "botbuster/rr.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <string>

namespace botbuster {

namespace {

void validate_pair(const Indicators& ind)
{
    if (ind.lambda_hat < 0.0 || ind.rho_hat < 0.0 || ind.rho_hat > ind.lambda_hat
        || std::isnan(ind.lambda_hat) || std::isnan(ind.rho_hat)) {
        fail(ErrorCategory::Domain, "indicator pair requires 0 <= rho_hat <= lambda_hat");
    }
}

// Equalization condition, cross-multiplied into quadratic form
// q(d) = (d2 - d1) d^2 + [d2 (l1 + r1) + d1 (l2 + r2)] d + d2 l1 r1 - d1 l2 r2.
struct Quadratic {
    double a, b, c;
    double eval(double d) const { return (a * d + b) * d + c; }
    double slope(double d) const { return 2.0 * a * d + b; }
};

Quadratic make_quadratic(const Indicators& i1, const Indicators& i2)
{
    const double d1 = i1.repeat_rate();
    const double d2 = i2.repeat_rate();
    return Quadratic{
        d2 - d1,
        d2 * (i1.lambda_hat + i1.rho_hat) + d1 * (i2.lambda_hat + i2.rho_hat),
        d2 * i1.lambda_hat * i1.rho_hat - d1 * i2.lambda_hat * i2.rho_hat,
    };
}

bool admissible(double delta, const Indicators& i1, const Indicators& i2, double slack)
{
    return delta >= -i1.rho_hat - slack && delta <= i2.rho_hat + slack;
}

} // namespace

double solve_delta_star(const Indicators& i1, const Indicators& i2)
{
    validate_pair(i1);
    validate_pair(i2);

    const double l1 = i1.lambda_hat, r1 = i1.rho_hat;
    const double l2 = i2.lambda_hat, r2 = i2.rho_hat;
    const double d1 = i1.repeat_rate();
    const double d2 = i2.repeat_rate();
    const double scale = std::max(l1, l2);
    const double slack = 1e-9 * (l1 + r1 + l2 + r2);

    if (!i1.alpha_finite() && !i2.alpha_finite()) {
        fail(ErrorCategory::Domain, "both subnets repeat-free; no reference EDR is defined");
    }
    // One repeat-free side: the square-root term of the closed form has a
    // zero factor, leaving the linear limit. The repeat-free subnet passes
    // its whole distinct-message rate to the other.
    if (!i2.alpha_finite()) {
        return std::clamp((l1 * l2 - r1 * r2) / d1, -r1, r2);
    }
    if (!i1.alpha_finite()) {
        return std::clamp((l1 * l2 - r1 * r2) / (-d2), -r1, r2);
    }

    const double den = d1 - d2;
    if (std::abs(den) < 1e-9 * scale) {
        // Equal repeat rates: the quadratic term cancels and the
        // equalization condition is linear in delta.
        return std::clamp((l2 * r2 - l1 * r1) / (l1 + r1 + l2 + r2), -r1, r2);
    }

    const double head = l1 * l2 - r1 * r2;
    const double root = std::sqrt(d1 * d2 * (l1 + r2) * (l2 + r1));
    double candidates[2] = {(head - root) / den, (head + root) / den};

    const Quadratic q = make_quadratic(i1, i2);
    double best = 0.0;
    bool found = false;
    bool both_admissible = true;
    for (double cand : candidates) {
        // One Newton step on the cross-multiplied quadratic tightens the
        // root after the cancellation-prone closed form.
        const double slope = q.slope(cand);
        if (slope != 0.0) {
            cand -= q.eval(cand) / slope;
        }
        if (!admissible(cand, i1, i2, slack)) {
            both_admissible = false;
            continue;
        }
        if (!found || std::abs(cand) < std::abs(best)) {
            best = cand;
            found = true;
        }
    }
    if (found && both_admissible && candidates[0] != candidates[1]) {
        std::cerr << "note: both reassignment roots admissible (" << candidates[0] << ", "
                  << candidates[1] << "); keeping the smaller magnitude\n";
    }
    if (!found) {
        fail(ErrorCategory::Numerical,
             "no admissible reassignment rate: lambda=(" + std::to_string(l1) + ","
                 + std::to_string(l2) + ") rho=(" + std::to_string(r1) + "," + std::to_string(r2)
                 + ") roots=(" + std::to_string(candidates[0]) + "," + std::to_string(candidates[1])
                 + ")");
    }
    return std::clamp(best, -r1, r2);
}

RrSolution reference_quantities(const Indicators& i1, const Indicators& i2, double epsilon)
{
    if (!(epsilon > 0.0) || !(epsilon < 1.0)) {
        fail(ErrorCategory::Config, "epsilon must lie strictly inside (0, 1)");
    }
    validate_pair(i1);
    validate_pair(i2);

    RrSolution sol;
    sol.epsilon = epsilon;
    sol.rho_sum = i1.rho_hat + i2.rho_hat;

    if (!i1.alpha_finite() && !i2.alpha_finite()) {
        // No repeats anywhere: rho_i == lambda_i, so the bounds collapse.
        sol.delta_star = 0.0;
        sol.alpha_prime = kInfiniteRate;
        sol.rho_bot = i1.lambda_hat + i2.lambda_hat;
        sol.gamma = sol.rho_sum;
        return sol;
    }

    sol.delta_star = solve_delta_star(i1, i2);

    // Evaluate the common EDR on the side with the larger repeat rate;
    // both sides agree at the solution but the larger denominator is the
    // numerically stable one.
    const double d1 = i1.repeat_rate();
    const double d2 = i2.repeat_rate();
    if (d1 >= d2) {
        sol.alpha_prime = (i1.lambda_hat + sol.delta_star) * (i1.rho_hat + sol.delta_star) / d1;
    } else {
        sol.alpha_prime = (i2.lambda_hat - sol.delta_star) * (i2.rho_hat - sol.delta_star) / d2;
    }

    sol.rho_bot = r_function(sol.alpha_prime, i1.lambda_hat + i2.lambda_hat);
    // The chain rho_bot <= rho_sum can be violated only by roundoff.
    sol.rho_bot = std::min(sol.rho_bot, sol.rho_sum);
    sol.gamma = sol.rho_bot + epsilon * (sol.rho_sum - sol.rho_bot);
    return sol;
}

BicResult bic_check(const SubnetStats& s1, const SubnetStats& s2, const SubnetStats& joint,
                    double epsilon)
{
    if (joint.n_events != s1.n_events + s2.n_events) {
        fail(ErrorCategory::Disjointness,
             "joint stats are not the disjoint union of the two subnets");
    }
    BicResult res;
    res.i1 = compute_indicators(s1);
    res.i2 = compute_indicators(s2);
    res.rr = reference_quantities(res.i1, res.i2, epsilon);
    res.rho_union = compute_indicators(joint).rho_hat;

    const bool no_repeat_evidence = !res.i1.alpha_finite() && !res.i2.alpha_finite();
    if (!no_repeat_evidence && below_gamma(res.rho_union, res.rr)) {
        res.decision = BicDecision::BothBot;
    } else {
        res.decision = BicDecision::AtLeastOneNormal;
    }
    return res;
}

} // namespace botbuster
