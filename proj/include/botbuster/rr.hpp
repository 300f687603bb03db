#pragma once

#include "botbuster/indicators.hpp"

namespace botbuster {

/// Output of the replacement-and-reassignment construction for a pair of
/// disjoint subnets. The construction is purely algebraic: it finds the
/// message-reassignment rate delta_star that would leave both subnets with
/// one common dictionary-rate estimate alpha_prime, while conserving the
/// joint transmission rate and joint innovation rate. From that reference
/// rate it derives
///
///   rho_bot = R(alpha_prime, lambda1 + lambda2)   botnet-like lower bound
///   rho_sum = rho1 + rho2                          disjoint upper bound
///   gamma   = rho_bot + epsilon * (rho_sum - rho_bot)
///
/// with rho_bot <= gamma <= rho_sum, strictly so when both subnets have
/// strictly positive repeat rates and 0 < epsilon < 1.
struct RrSolution {
    double delta_star = 0.0;  // signed reassignment rate, in [-rho1, rho2]
    double alpha_prime = 0.0; // common reference EDR; may be +infinity
    double rho_bot = 0.0;
    double rho_sum = 0.0;
    double gamma = 0.0;
    double epsilon = 0.0;
};

/// Solves for the reassignment rate delta_star equalizing the two post-
/// reassignment dictionary-rate estimates:
///
///   (lambda1 + d)(rho1 + d)   (lambda2 - d)(rho2 - d)
///   ----------------------- = -----------------------
///       lambda1 - rho1            lambda2 - rho2
///
/// Picks the root of the underlying quadratic that satisfies the
/// admissibility window -rho1 <= d <= rho2. delta_star is positive exactly
/// when alpha1_hat < alpha2_hat (the subnet with the higher rate estimate
/// passes messages to the other), negative when reversed, zero when equal.
///
/// Degenerate branches:
///  - near-equal repeat rates (the quadratic coefficient vanishes): the
///    linear solution d = (l2 r2 - l1 r1) / (l1 + r1 + l2 + r2);
///  - exactly one side repeat-free (alpha_hat infinite): the analytic
///    limit d = (l1 l2 - r1 r2) / (l1 - r1), and its mirror image.
///
/// Both sides repeat-free is a domain error here; reference_quantities
/// resolves that case without solving.
double solve_delta_star(const Indicators& i1, const Indicators& i2);

/// Full RR chain: delta_star, the common reference EDR evaluated at the
/// solution, and the rho_bot <= gamma <= rho_sum sandwich. When both
/// subnets are repeat-free there is no repeat evidence at all; then
/// alpha_prime is infinite and rho_bot, gamma and rho_sum all coincide
/// with lambda1 + lambda2.
RrSolution reference_quantities(const Indicators& i1, const Indicators& i2, double epsilon);

enum class BicDecision {
    BothBot,          // joint MIR fell below gamma
    AtLeastOneNormal, // joint MIR at or above gamma
};

inline const char* to_string(BicDecision d)
{
    return d == BicDecision::BothBot ? "BOTH_BOT" : "AT_LEAST_ONE_NORMAL";
}

struct BicResult {
    BicDecision decision = BicDecision::AtLeastOneNormal;
    double rho_union = 0.0;
    Indicators i1;
    Indicators i2;
    RrSolution rr;
};

/// Decision comparison rho_union < gamma with a relative guard band. When
/// one subnet is repeat-free, gamma coincides with rho_sum up to rounding,
/// and a disjoint pair has rho_union == rho_sum exactly in reals; the
/// guard keeps rounding noise from deciding that boundary (ties go to
/// AtLeastOneNormal). Any true overlap shifts rho_union by at least one
/// message per observation window, far above the band.
inline bool below_gamma(double rho_union, const RrSolution& rr)
{
    return rho_union < rr.gamma - 1e-9 * rr.rho_sum;
}

/// Botnet Identification Condition check for two disjoint subnets:
/// declares BothBot iff the empirical joint MIR is strictly below gamma.
/// When neither subnet has a single repeated message the check abstains
/// (AtLeastOneNormal) regardless of dictionary overlap: with no repeat
/// evidence the reference-botnet comparison is vacuous, and flagging on
/// early accidental overlap would be wildly unstable at small t.
BicResult bic_check(const SubnetStats& s1, const SubnetStats& s2, const SubnetStats& joint,
                    double epsilon);

} // namespace botbuster
