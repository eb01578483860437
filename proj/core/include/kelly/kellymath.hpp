#pragma once

#include <optional>

namespace kelly {

/// The quadruple every formula in the library is parameterized by.
///
/// `mu` is expressed in the same units as the growth rate: a log return per
/// bet step.
struct AllocationParams {
    double p = 0.5;      ///< win probability, [0, 1]
    int T = 1;           ///< horizon in bet steps, >= 1
    double mu = 0.0;     ///< desired rate of return
    double theta = 0.0;  ///< fraction of wealth staked per bet, (-1, 1)
};

/// Throws DomainError when `params` violates the invariants above.
void validate(const AllocationParams& params);

struct GrowthStats {
    double mean = 0.0;      ///< E[G_T]
    double variance = 0.0;  ///< Var[G_T]
    /// (mean - benchmark) / stdev; empty when p is 0 or 1.
    std::optional<double> sharpe;
};

struct KellyAllocation {
    double theta = 0.0;
    bool no_bet = false;  ///< theta <= 0: no favourable edge
};

/// Expected log growth per bet: (1-p) ln(1-theta) + p ln(1+theta).
[[nodiscard]] double growth_rate(double p, double theta);

/// Raw Kelly fraction 2p - 1. Negative values are returned unclamped.
[[nodiscard]] KellyAllocation kelly_allocation(double p);

/// Mean, variance and Sharpe ratio of the finite-horizon growth rate.
///
/// The Sharpe ratio is measured against `benchmark` (0 by default). At
/// theta == 0 the variance vanishes; the Sharpe ratio is then the
/// theta -> 0 limit sqrt(T/(p(1-p))) (p - 1/2) for a zero benchmark.
[[nodiscard]] GrowthStats growth_stats(const AllocationParams& params, double benchmark = 0.0);

/// Sharpe ratio of the growth rate; throws DomainError for p outside (0, 1).
[[nodiscard]] double sharpe_ratio(const AllocationParams& params, double benchmark = 0.0);

/// Sharpe ratio at the Kelly allocation theta = 2p - 1. Requires 0.5 < p < 1.
[[nodiscard]] double kelly_sharpe(double p, int T);

/// kelly_sharpe with the sqrt(T) horizon factor removed.
[[nodiscard]] double kelly_sharpe_scaled(double p);

/// ln(1-theta^2) + theta ln((1+theta)/(1-theta)), evaluated as
/// (1-theta) ln(1-theta) + (1+theta) ln(1+theta).
[[nodiscard]] double sharpe_stationarity_residual(double theta);

/// Search for an interior root of the stationarity residual in (lo, hi)
/// by sign changes over `samples` uniform subintervals, refined by
/// bisection. Returns nullopt when the interval holds no interior root.
[[nodiscard]] std::optional<double> find_stationarity_root(double lo, double hi, int samples = 1000);

}  // namespace kelly
