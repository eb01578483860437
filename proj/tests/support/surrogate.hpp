#pragma once

#include <cmath>
#include <cstdlib>
#include <string>

#include "kelly/date.hpp"
#include "kelly/prices.hpp"
#include "kelly/rng.hpp"
#include "support/dates.hpp"

namespace surrogate {

/// Weekday closes from 1985-01-29 to 2019-08-28 following a geometric
/// Brownian motion with the Dow's long-run drift and volatility
/// (about 8.7% and 17% a year) and its 1985 starting level.
inline kelly::backtest::PriceSeries djia_like(std::uint64_t seed = 19850129) {
    constexpr double kDrift = 0.087;
    constexpr double kVol = 0.17;
    constexpr double kDt = 1.0 / 252.0;
    const kelly::Date first{1985, 1, 29};
    const kelly::Date last{2019, 8, 28};

    kelly::Stream stream(seed, 0);
    std::vector<kelly::backtest::PricePoint> points;
    double close = 1292.62;
    for (long long day = first.ordinal(); day <= last.ordinal(); ++day) {
        if (support::weekday(day) >= 5) continue;
        points.push_back({support::date_from_ordinal(day), std::round(close * 100.0) / 100.0});
        close *= std::exp((kDrift - 0.5 * kVol * kVol) * kDt + kVol * std::sqrt(kDt) * stream.normal());
    }
    return kelly::backtest::PriceSeries(std::move(points));
}

/// Path of a real DJIA close file from KELLY_DJIA_CSV, or empty.
inline std::string djia_path_from_env() {
    const char* path = std::getenv("KELLY_DJIA_CSV");
    return path == nullptr ? std::string() : std::string(path);
}

}  // namespace surrogate
