#include "botbuster/indicators.hpp"

#include <cmath>

namespace botbuster {

double r_function(double alpha, double lambda)
{
    if (alpha < 0.0 || lambda < 0.0 || std::isnan(alpha) || std::isnan(lambda)) {
        fail(ErrorCategory::Domain, "r_function arguments must be nonnegative");
    }
    if (alpha == 0.0 || lambda == 0.0) {
        return 0.0;
    }
    if (std::isinf(alpha)) {
        return lambda;
    }
    if (std::isinf(lambda)) {
        return alpha;
    }
    return alpha * lambda / (alpha + lambda);
}

Indicators compute_indicators(std::uint64_t n_events, std::uint64_t distinct, double t)
{
    if (!(t > 0.0)) {
        fail(ErrorCategory::Domain, "indicator horizon must be positive");
    }
    if (distinct > n_events) {
        fail(ErrorCategory::Domain, "dictionary cannot exceed event count");
    }
    Indicators ind;
    ind.lambda_hat = static_cast<double>(n_events) / t;
    ind.rho_hat = static_cast<double>(distinct) / t;
    const double repeats = ind.lambda_hat - ind.rho_hat;
    if (n_events == distinct || repeats <= kRepeatRateTolerance * ind.lambda_hat) {
        ind.alpha_hat = kInfiniteRate;
    } else {
        ind.alpha_hat = ind.lambda_hat * ind.rho_hat / repeats;
    }
    return ind;
}

Indicators compute_indicators(const SubnetStats& stats)
{
    return compute_indicators(stats.n_events, stats.dict.size(), stats.horizon);
}

} // namespace botbuster
