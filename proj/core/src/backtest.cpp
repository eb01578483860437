#include "kelly/backtest.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "kelly/errors.hpp"
#include "kelly/rng.hpp"
#include "parallel.hpp"

namespace kelly::backtest {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kMinTrades = 10;

int sign_of(double x) noexcept { return (x > 0.0) - (x < 0.0); }

// Per-date trade tallies accumulated over a block of replications.
struct Tally {
    std::vector<std::uint64_t> longs;
    std::vector<std::uint64_t> shorts;
    std::uint64_t correct = 0;
    std::uint64_t non_flat = 0;

    explicit Tally(std::size_t dates) : longs(dates, 0), shorts(dates, 0) {}

    void merge(const Tally& other) {
        for (std::size_t i = 0; i < longs.size(); ++i) {
            longs[i] += other.longs[i];
            shorts[i] += other.shorts[i];
        }
        correct += other.correct;
        non_flat += other.non_flat;
    }
};

std::vector<HistogramBin> build_histogram(const std::vector<DatedReturn>& dates, std::size_t total, int bins) {
    double lo = kInf;
    double hi = -kInf;
    for (const auto& d : dates) {
        if (d.long_trades > 0) {
            lo = std::min(lo, d.long_return);
            hi = std::max(hi, d.long_return);
        }
        if (d.short_trades > 0) {
            lo = std::min(lo, -d.long_return);
            hi = std::max(hi, -d.long_return);
        }
    }
    if (!(hi > lo)) return {{lo, hi, 1.0}};

    const double width = (hi - lo) / bins;
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(bins), 0);
    auto place = [&](double x, std::uint64_t n) {
        if (n == 0) return;
        auto idx = static_cast<long long>(std::floor((x - lo) / width));
        idx = std::clamp<long long>(idx, 0, bins - 1);
        counts[static_cast<std::size_t>(idx)] += n;
    };
    for (const auto& d : dates) {
        place(d.long_return, d.long_trades);
        place(-d.long_return, d.short_trades);
    }
    std::vector<HistogramBin> out(static_cast<std::size_t>(bins));
    for (int b = 0; b < bins; ++b) {
        auto& bin = out[static_cast<std::size_t>(b)];
        bin.bin_left = lo + width * b;
        bin.bin_right = b + 1 == bins ? hi : lo + width * (b + 1);
        bin.density = static_cast<double>(counts[static_cast<std::size_t>(b)]) / static_cast<double>(total);
    }
    return out;
}

}  // namespace

double DatedReturn::mean_annualized_return() const noexcept {
    const std::size_t n = trades();
    if (n == 0) return 0.0;
    return long_return * (static_cast<double>(long_trades) - static_cast<double>(short_trades)) /
           static_cast<double>(n);
}

void validate(const SignalConfig& cfg) {
    if (!(cfg.accuracy >= 0.0 && cfg.accuracy <= 1.0)) throw DomainError("accuracy must lie in [0, 1]");
    if (cfg.horizon < 1) throw DomainError("horizon must be >= 1");
    if (cfg.sims < 1) throw DomainError("sims must be >= 1");
    if (!std::isfinite(cfg.mu)) throw DomainError("mu must be finite");
    if (!(cfg.grid_step > 0.0)) throw DomainError("grid step must be > 0");
    if (cfg.days_per_year < 1) throw DomainError("days per year must be >= 1");
    if (cfg.bins < 1) throw DomainError("bins must be >= 1");
}

std::vector<int> simulate_signals(const PriceSeries& series, const SignalConfig& cfg, int replication) {
    validate(cfg);
    if (replication < 0 || replication >= cfg.sims) {
        throw DomainError("replication " + std::to_string(replication) + " outside [0, sims)");
    }
    const std::size_t n = series.size();
    std::vector<int> signals(n > 0 ? n - 1 : 0);
    Stream stream(cfg.seed, static_cast<std::uint64_t>(replication));
    for (std::size_t t = 0; t + 1 < n; ++t) {
        // Draw on flat days too so day t always consumes the t-th variate.
        const int xi = stream.sign(cfg.accuracy);
        signals[t] = sign_of(series.close(t + 1) - series.close(t)) * xi;
    }
    return signals;
}

std::vector<TradeRecord> run_strategy(const PriceSeries& series, const std::vector<int>& signals,
                                      double theta_star, int T, int days_per_year) {
    if (!(theta_star >= 0.0 && theta_star < 1.0)) throw DomainError("run_strategy: theta must lie in [0, 1)");
    if (T < 1) throw DomainError("run_strategy: T must be >= 1");
    if (series.size() < static_cast<std::size_t>(T) + 1) {
        throw DomainError("horizon T=" + std::to_string(T) + " exceeds the series (" +
                          std::to_string(series.size()) + " prices)");
    }
    const std::size_t trades = series.size() - static_cast<std::size_t>(T);
    if (signals.size() < trades) throw DomainError("run_strategy: fewer signals than entry dates");

    std::vector<TradeRecord> out(trades);
    const double scale = static_cast<double>(days_per_year) / T;
    for (std::size_t t = 0; t < trades; ++t) {
        TradeRecord& r = out[t];
        r.entry_date = series.date(t);
        r.direction = signals[t];
        r.allocation = theta_star;
        r.raw_return = series.close(t + static_cast<std::size_t>(T)) / series.close(t) - 1.0;
        r.strategy_return = r.direction * theta_star * r.raw_return;
        r.annualized_return = r.strategy_return * scale;
    }
    return out;
}

BacktestReport run_backtest(const PriceSeries& series, const SignalConfig& cfg, const std::vector<Period>& periods) {
    validate(cfg);
    const int T = cfg.horizon;
    if (series.size() < static_cast<std::size_t>(T) + 1) {
        throw DomainError("horizon T=" + std::to_string(T) + " exceeds the series (" +
                          std::to_string(series.size()) + " prices)");
    }

    BacktestReport report;
    report.config = cfg;
    sortino::OptimizeOptions options;
    options.grid_step = cfg.grid_step;
    options.mode = cfg.mode;
    options.path = cfg.path;
    report.allocation = sortino::optimize_theta(cfg.accuracy, T, cfg.mu, options);
    const double theta = report.allocation.theta_star;
    const double scale = static_cast<double>(cfg.days_per_year) / T;
    report.realized_target = cfg.mu * scale;

    const std::size_t dates = series.size() - static_cast<std::size_t>(T);

    // Replications are tallied in fixed blocks; block sums are integers, so
    // the merge is independent of scheduling.
    const std::size_t sims = static_cast<std::size_t>(cfg.sims);
    const std::size_t block_size = std::max<std::size_t>(1, (sims + 63) / 64);
    const std::size_t blocks = (sims + block_size - 1) / block_size;
    std::vector<Tally> partial(blocks, Tally(dates));
    detail::parallel_for(blocks, cfg.threads, [&](std::size_t b) {
        Tally& tally = partial[b];
        const std::size_t end = std::min(sims, (b + 1) * block_size);
        for (std::size_t rep = b * block_size; rep < end; ++rep) {
            const std::vector<int> signals = simulate_signals(series, cfg, static_cast<int>(rep));
            for (std::size_t t = 0; t < signals.size(); ++t) {
                const int move = sign_of(series.close(t + 1) - series.close(t));
                if (move == 0) continue;
                ++tally.non_flat;
                if (signals[t] == move) ++tally.correct;
                if (t < dates) {
                    if (signals[t] > 0) ++tally.longs[t];
                    if (signals[t] < 0) ++tally.shorts[t];
                }
            }
        }
    });
    Tally total(dates);
    for (const auto& t : partial) total.merge(t);

    report.by_date.resize(dates);
    std::uint64_t pooled = 0;
    for (std::size_t t = 0; t < dates; ++t) {
        DatedReturn& d = report.by_date[t];
        d.date = series.date(t);
        d.close = series.close(t);
        const double raw = series.close(t + static_cast<std::size_t>(T)) / series.close(t) - 1.0;
        d.long_return = theta * raw * scale;
        d.long_trades = total.longs[t];
        d.short_trades = total.shorts[t];
        pooled += d.trades();
    }
    if (pooled < kMinTrades) {
        throw DomainError("insufficient data: " + std::to_string(pooled) + " trades pooled, need at least " +
                          std::to_string(kMinTrades));
    }
    report.trades = pooled;
    const auto n = static_cast<long double>(pooled);

    long double sum = 0.0L;
    for (const auto& d : report.by_date) {
        sum += static_cast<long double>(d.long_return) *
               (static_cast<long double>(d.long_trades) - static_cast<long double>(d.short_trades));
    }
    const long double mean = sum / n;

    const long double target = report.realized_target;
    long double squares = 0.0L;
    long double shortfall = 0.0L;
    std::uint64_t above = 0;
    std::uint64_t below = 0;
    std::uint64_t hits = 0;
    std::uint64_t moved = 0;
    for (std::size_t t = 0; t < dates; ++t) {
        const DatedReturn& d = report.by_date[t];
        const long double v = d.long_return;
        const auto L = static_cast<long double>(d.long_trades);
        const auto S = static_cast<long double>(d.short_trades);
        squares += L * (v - mean) * (v - mean) + S * (-v - mean) * (-v - mean);
        const long double up_gap = std::min(v - target, 0.0L);
        const long double down_gap = std::min(-v - target, 0.0L);
        shortfall += L * up_gap * up_gap + S * down_gap * down_gap;
        if (v > 0.0L) {
            above += d.long_trades;
            below += d.short_trades;
        } else if (v < 0.0L) {
            above += d.short_trades;
            below += d.long_trades;
        }
        const double raw = series.close(t + static_cast<std::size_t>(T)) - series.close(t);
        if (raw != 0.0) {
            moved += d.trades();
            hits += raw > 0.0 ? d.long_trades : d.short_trades;
        }
    }

    report.mean_annualized_return = static_cast<double>(mean);
    report.stdev_annualized_return = pooled > 1 ? static_cast<double>(std::sqrt(squares / (n - 1.0L))) : 0.0;
    report.downside_deviation = static_cast<double>(std::sqrt(shortfall / n));
    if (report.stdev_annualized_return > 0.0) {
        report.realized_sharpe = report.mean_annualized_return / report.stdev_annualized_return;
    } else {
        report.realized_sharpe = mean > 0.0L ? kInf : (mean < 0.0L ? -kInf : 0.0);
    }
    const long double excess = mean - target;
    if (report.downside_deviation > 0.0) {
        report.realized_sortino = static_cast<double>(excess / report.downside_deviation);
    } else {
        report.realized_sortino = excess > 0.0L ? kInf : 0.0;
    }
    report.mass_above_zero = static_cast<double>(above) / static_cast<double>(pooled);
    report.mass_below_zero = static_cast<double>(below) / static_cast<double>(pooled);
    report.signal_accuracy = total.non_flat > 0 ? static_cast<double>(total.correct) / total.non_flat : 0.0;
    report.horizon_hit_rate = moved > 0 ? static_cast<double>(hits) / static_cast<double>(moved) : 0.0;

    report.histogram = build_histogram(report.by_date, pooled, cfg.bins);
    report.per_period = period_overlay(report, periods);
    return report;
}

std::vector<PeriodStats> period_overlay(const BacktestReport& report, const std::vector<Period>& periods) {
    std::vector<PeriodStats> out;
    out.reserve(periods.size());
    for (const auto& period : periods) {
        if (period.end < period.start) {
            throw DomainError("period '" + period.label + "' ends before it starts");
        }
        PeriodStats stats;
        stats.period = period;
        long double sum = 0.0L;
        double lo = kInf;
        double hi = -kInf;
        for (const auto& d : report.by_date) {
            if (d.date < period.start || period.end < d.date || d.trades() == 0) continue;
            stats.count += d.trades();
            sum += static_cast<long double>(d.long_return) *
                   (static_cast<long double>(d.long_trades) - static_cast<long double>(d.short_trades));
            if (d.long_trades > 0) {
                lo = std::min(lo, d.long_return);
                hi = std::max(hi, d.long_return);
            }
            if (d.short_trades > 0) {
                lo = std::min(lo, -d.long_return);
                hi = std::max(hi, -d.long_return);
            }
        }
        if (stats.count > 0) {
            stats.mean = static_cast<double>(sum / static_cast<long double>(stats.count));
            stats.min = lo;
            stats.max = hi;
        }
        out.push_back(std::move(stats));
    }
    return out;
}

std::vector<double> simulate_growth_paths(double p, double theta, int T, int paths, std::uint64_t seed,
                                          unsigned threads) {
    validate(AllocationParams{p, T, 0.0, theta});
    if (paths < 1) throw DomainError("simulate_growth_paths: paths must be >= 1");
    const double up = std::log1p(theta);
    const double down = std::log1p(-theta);
    std::vector<double> out(static_cast<std::size_t>(paths));
    detail::parallel_for(out.size(), threads, [&](std::size_t i) {
        Stream stream(seed, i);
        int wins = 0;
        for (int t = 0; t < T; ++t) wins += stream.sign(p) > 0;
        out[i] = (wins * up + (T - wins) * down) / T;
    });
    return out;
}

}  // namespace kelly::backtest
