#pragma once

#include <istream>
#include <string>
#include <vector>

#include <json.hpp>

#include "kelly/backtest.hpp"
#include "kelly/sortino.hpp"

namespace kelly::cli {

using json = nlohmann::ordered_json;

/// Finite doubles become JSON numbers; +/-inf and NaN become the strings
/// "inf", "-inf" and "nan", which JSON cannot express as numbers.
[[nodiscard]] json number(double value);
[[nodiscard]] double read_number(const json& value);

[[nodiscard]] json to_json(const sortino::OptimizationResult& result);

/// Report schema: config echo, allocation, summary statistics, histogram
/// and per-period table. The per-date series is written separately.
[[nodiscard]] json to_json(const backtest::BacktestReport& report);

/// Rebuilds everything to_json(report) serializes (not `by_date`).
[[nodiscard]] backtest::BacktestReport report_from_json(const json& doc);

/// `[{"label": str, "start": "YYYY-MM-DD", "end": "YYYY-MM-DD"}]`.
/// Throws std::runtime_error with the offending entry index.
[[nodiscard]] std::vector<backtest::Period> parse_periods(std::istream& in);

}  // namespace kelly::cli
