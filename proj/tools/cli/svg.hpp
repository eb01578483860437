#pragma once

#include <string>
#include <vector>

#include "kelly/backtest.hpp"

namespace kelly::cli {

struct LineSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

/// Self-contained SVG line chart with axes, ticks and a legend. Non-finite
/// points are skipped and break the polyline.
[[nodiscard]] std::string line_chart_svg(const std::string& title, const std::string& x_label,
                                         const std::string& y_label, const std::vector<LineSeries>& series);

/// Bar chart of histogram bin masses.
[[nodiscard]] std::string histogram_svg(const std::string& title, const std::string& x_label,
                                        const std::vector<backtest::HistogramBin>& bins);

}  // namespace kelly::cli
