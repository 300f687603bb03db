#pragma once

#include <limits>

#include "botbuster/trace.hpp"

namespace botbuster {

inline constexpr double kInfiniteRate = std::numeric_limits<double>::infinity();

/// Relative gap below which lambda_hat - rho_hat is treated as zero when
/// estimating the dictionary rate; the estimator genuinely diverges there
/// and the quotient would be pure cancellation noise.
inline constexpr double kRepeatRateTolerance = 1e-12;

/// The three network-activity indicators of a subnet at a fixed time:
///
///   lambda_hat  empirical transmission rate, events per second
///   rho_hat     empirical Message Innovation Rate (MIR), distinct
///               messages per second
///   alpha_hat   empirical Emulation Dictionary Rate (EDR),
///               lambda*rho / (lambda - rho); +infinity when no repeated
///               message has been observed (rho == lambda)
///
/// Always 0 <= rho_hat <= lambda_hat, and rho_hat == r_function(alpha_hat,
/// lambda_hat) holds to machine precision whenever alpha_hat is finite.
struct Indicators {
    double lambda_hat = 0.0;
    double rho_hat = 0.0;
    double alpha_hat = kInfiniteRate;

    bool alpha_finite() const { return alpha_hat != kInfiniteRate; }

    /// Empirical repeat rate lambda_hat - rho_hat; zero when alpha_hat is
    /// infinite.
    double repeat_rate() const { return alpha_finite() ? lambda_hat - rho_hat : 0.0; }
};

/// The innovation-rate function  R(alpha, lambda) = alpha*lambda / (alpha +
/// lambda),  the limiting MIR of a botnet with dictionary rate alpha and
/// aggregate transmission rate lambda. Symmetric in its arguments, bounded
/// by min(alpha, lambda), equal to the harmonic form 1/(1/alpha +
/// 1/lambda), and strictly superadditive in lambda:
/// R(a, l1) + R(a, l2) > R(a, l1 + l2) for strictly positive arguments.
/// Either argument may be +infinity, in which case the other is returned.
double r_function(double alpha, double lambda);

/// Indicators from accumulated stats; stats.horizon must be positive.
Indicators compute_indicators(const SubnetStats& stats);

/// Indicators from raw totals (n events, d distinct messages, horizon t).
Indicators compute_indicators(std::uint64_t n_events, std::uint64_t distinct, double t);

} // namespace botbuster
