#include <cmath>

#include <benchmark/benchmark.h>

#include "kelly/backtest.hpp"
#include "kelly/rng.hpp"
#include "kelly/sortino.hpp"
#include "kelly/specfun.hpp"

using namespace kelly;

static void BM_DownsideDirect(benchmark::State& state) {
    const AllocationParams params{0.6, static_cast<int>(state.range(0)), 0.02, 0.2};
    for (auto _ : state) {
        benchmark::DoNotOptimize(sortino::downside_deviation(params, sortino::DownsideMode::target_aware,
                                                             sortino::EvalPath::direct_sum));
    }
}
BENCHMARK(BM_DownsideDirect)->Arg(90)->Arg(1000)->Arg(10000);

static void BM_DownsideClosed(benchmark::State& state) {
    const AllocationParams params{0.6, static_cast<int>(state.range(0)), 0.02, 0.2};
    for (auto _ : state) {
        benchmark::DoNotOptimize(sortino::downside_deviation(params, sortino::DownsideMode::target_aware,
                                                             sortino::EvalPath::closed_form));
    }
}
BENCHMARK(BM_DownsideClosed)->Arg(90)->Arg(1000)->Arg(10000);

static void BM_IncBeta(benchmark::State& state) {
    const double a = static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(specfun::inc_beta({0.4, a, a + 3.5}));
}
BENCHMARK(BM_IncBeta)->Arg(2)->Arg(50)->Arg(5000);

static void BM_OptimizeTheta(benchmark::State& state) {
    sortino::OptimizeOptions options;
    options.path = state.range(0) == 0 ? sortino::EvalPath::direct_sum : sortino::EvalPath::closed_form;
    for (auto _ : state) benchmark::DoNotOptimize(sortino::optimize_theta(0.7, 90, 0.02, options));
}
BENCHMARK(BM_OptimizeTheta)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static backtest::PriceSeries synthetic_series(int days) {
    Stream stream(3, 0);
    std::vector<backtest::PricePoint> points;
    double close = 1000.0;
    Date date{1985, 1, 1};
    for (int i = 0; i < days; ++i) {
        points.push_back({date, close});
        close *= std::exp(0.0003 + 0.01 * stream.normal());
        // The engine indexes by position, so a 28-day month calendar is enough.
        if (++date.day > 28) {
            date.day = 1;
            if (++date.month > 12) {
                date.month = 1;
                ++date.year;
            }
        }
    }
    return backtest::PriceSeries(std::move(points));
}

static void BM_Backtest(benchmark::State& state) {
    const auto series = synthetic_series(8700);
    backtest::SignalConfig cfg;
    cfg.sims = static_cast<int>(state.range(0));
    cfg.threads = 1;
    for (auto _ : state) benchmark::DoNotOptimize(backtest::run_backtest(series, cfg));
}
BENCHMARK(BM_Backtest)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
