#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kelly/date.hpp"
#include "kelly/prices.hpp"
#include "kelly/sortino.hpp"

namespace kelly::backtest {

struct SignalConfig {
    double accuracy = 0.6;  ///< P[signal = sign of next-day move]
    int horizon = 100;      ///< holding period T in trading days
    double mu = 0.03;       ///< desired rate fed to the allocation optimizer
    int sims = 1000;        ///< Monte Carlo replications L
    std::uint64_t seed = 42;
    sortino::DownsideMode mode = sortino::DownsideMode::target_aware;
    sortino::EvalPath path = sortino::EvalPath::closed_form;
    double grid_step = 5e-4;
    int days_per_year = 252;
    int bins = 200;
    unsigned threads = 0;  ///< 0 = hardware concurrency; results do not depend on it
};

/// Throws DomainError on invalid fields.
void validate(const SignalConfig& cfg);

/// Signal per day t in [0, n-2]: sign(P[t+1] - P[t]) * xi_t with
/// xi_t = +1 w.p. accuracy. Flat days give 0.
[[nodiscard]] std::vector<int> simulate_signals(const PriceSeries& series, const SignalConfig& cfg,
                                                int replication);

struct TradeRecord {
    Date entry_date;
    int direction = 0;  ///< +1 buy, -1 sell, 0 no trade
    double allocation = 0.0;
    double raw_return = 0.0;         ///< P[t+T]/P[t] - 1
    double strategy_return = 0.0;    ///< direction * allocation * raw_return
    double annualized_return = 0.0;  ///< strategy_return * days_per_year / T
};

/// One record per entry day t with t + T inside the series (trading-day
/// index alignment). Throws DomainError when T does not fit the series.
[[nodiscard]] std::vector<TradeRecord> run_strategy(const PriceSeries& series,
                                                    const std::vector<int>& signals,
                                                    double theta_star, int T, int days_per_year = 252);

struct HistogramBin {
    double bin_left = 0.0;
    double bin_right = 0.0;
    double density = 0.0;  ///< probability mass of the bin; bins sum to 1
};

struct Period {
    std::string label;
    Date start;
    Date end;
};

struct PeriodStats {
    Period period;
    std::size_t count = 0;
    double mean = 0.0;
    double min = 0.0;
    double max = 0.0;
    bool empty() const noexcept { return count == 0; }
};

/// Pooled trades entered on one date. Every replication trades the same
/// T-day move, so a date's trades take only two values: +long_return for
/// buys and -long_return for sells.
struct DatedReturn {
    Date date;
    double close = 0.0;
    double long_return = 0.0;  ///< annualized return of a buy entered here
    std::size_t long_trades = 0;
    std::size_t short_trades = 0;

    [[nodiscard]] std::size_t trades() const noexcept { return long_trades + short_trades; }
    /// Mean annualized return over this date's trades (0 with no trades).
    [[nodiscard]] double mean_annualized_return() const noexcept;
};

struct BacktestReport {
    SignalConfig config;
    sortino::OptimizationResult allocation;  ///< theta* and its model Sortino
    double realized_target = 0.0;            ///< mu * days_per_year / T

    std::size_t trades = 0;  ///< pooled trades with a nonzero direction
    double mean_annualized_return = 0.0;
    double stdev_annualized_return = 0.0;
    double downside_deviation = 0.0;
    double realized_sharpe = 0.0;
    double realized_sortino = 0.0;  ///< +inf when nothing falls below target
    double mass_above_zero = 0.0;
    double mass_below_zero = 0.0;
    double signal_accuracy = 0.0;   ///< over non-flat days, all replications
    double horizon_hit_rate = 0.0;  ///< share of trades with the sign of the T-day move

    std::vector<HistogramBin> histogram;
    std::vector<PeriodStats> per_period;
    std::vector<DatedReturn> by_date;
};

/// Full Monte Carlo experiment. Per-trade returns are pooled across
/// replications; the report is a pure function of (series, cfg, periods).
/// Throws DomainError when fewer than 10 trades are pooled.
[[nodiscard]] BacktestReport run_backtest(const PriceSeries& series, const SignalConfig& cfg,
                                          const std::vector<Period>& periods = {});

/// Count/mean/min/max of annualized returns for trades entered in each
/// window. Empty windows are reported with count 0.
[[nodiscard]] std::vector<PeriodStats> period_overlay(const BacktestReport& report,
                                                      const std::vector<Period>& periods);

/// Realized finite-horizon growth rates (1/T) sum ln(1 + eta_t theta) for
/// `paths` independent paths of T bets won with probability p.
[[nodiscard]] std::vector<double> simulate_growth_paths(double p, double theta, int T, int paths,
                                                        std::uint64_t seed, unsigned threads = 0);

}  // namespace kelly::backtest
