#include "cli/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace kelly::cli {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 440.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 55.0;

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd"};

std::string fmt(double v, const char* spec = "%.2f") {
    char buf[32];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

std::string escape(const std::string& text) {
    std::string out;
    for (char ch : text) {
        switch (ch) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += ch;
        }
    }
    return out;
}

struct Frame {
    double x0, x1, y0, y1;

    double px(double x) const { return kLeft + (x - x0) / (x1 - x0) * (kWidth - kLeft - kRight); }
    double py(double y) const { return kHeight - kBottom - (y - y0) / (y1 - y0) * (kHeight - kTop - kBottom); }
};

void widen(double& lo, double& hi) {
    if (!std::isfinite(lo) || !std::isfinite(hi)) {
        lo = 0.0;
        hi = 1.0;
    }
    if (hi <= lo) {
        const double pad = std::max(std::fabs(lo) * 0.05, 1e-9);
        lo -= pad;
        hi += pad;
    }
}

void axes(std::ostringstream& s, const Frame& f, const std::string& title, const std::string& x_label,
          const std::string& y_label) {
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    s << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" << escape(title)
      << "</text>\n";
    const double xb = kHeight - kBottom;
    s << "<line x1=\"" << kLeft << "\" y1=\"" << xb << "\" x2=\"" << kWidth - kRight << "\" y2=\"" << xb
      << "\" stroke=\"black\"/>\n";
    s << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\"" << xb
      << "\" stroke=\"black\"/>\n";
    constexpr int kTicks = 5;
    for (int i = 0; i <= kTicks; ++i) {
        const double xv = f.x0 + (f.x1 - f.x0) * i / kTicks;
        const double yv = f.y0 + (f.y1 - f.y0) * i / kTicks;
        s << "<line x1=\"" << fmt(f.px(xv)) << "\" y1=\"" << xb << "\" x2=\"" << fmt(f.px(xv)) << "\" y2=\""
          << xb + 5 << "\" stroke=\"black\"/>\n";
        s << "<text x=\"" << fmt(f.px(xv)) << "\" y=\"" << xb + 18 << "\" text-anchor=\"middle\">"
          << fmt(xv, "%.4g") << "</text>\n";
        s << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << fmt(f.py(yv)) << "\" x2=\"" << kLeft << "\" y2=\""
          << fmt(f.py(yv)) << "\" stroke=\"black\"/>\n";
        s << "<text x=\"" << kLeft - 8 << "\" y=\"" << fmt(f.py(yv) + 4) << "\" text-anchor=\"end\">"
          << fmt(yv, "%.4g") << "</text>\n";
    }
    s << "<text x=\"" << (kLeft + kWidth - kRight) / 2 << "\" y=\"" << kHeight - 12
      << "\" text-anchor=\"middle\">" << escape(x_label) << "</text>\n";
    s << "<text x=\"16\" y=\"" << (kTop + xb) / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << (kTop + xb) / 2 << ")\">" << escape(y_label) << "</text>\n";
}

}  // namespace

std::string line_chart_svg(const std::string& title, const std::string& x_label, const std::string& y_label,
                           const std::vector<LineSeries>& series) {
    double x0 = std::numeric_limits<double>::infinity();
    double x1 = -x0;
    double y0 = x0;
    double y1 = -x0;
    for (const auto& line : series) {
        for (std::size_t i = 0; i < std::min(line.x.size(), line.y.size()); ++i) {
            if (!std::isfinite(line.x[i]) || !std::isfinite(line.y[i])) continue;
            x0 = std::min(x0, line.x[i]);
            x1 = std::max(x1, line.x[i]);
            y0 = std::min(y0, line.y[i]);
            y1 = std::max(y1, line.y[i]);
        }
    }
    widen(x0, x1);
    widen(y0, y1);
    const Frame frame{x0, x1, y0, y1};

    std::ostringstream s;
    axes(s, frame, title, x_label, y_label);
    for (std::size_t k = 0; k < series.size(); ++k) {
        const auto& line = series[k];
        const char* color = kPalette[k % std::size(kPalette)];
        std::string points;
        auto flush = [&] {
            if (!points.empty()) {
                s << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"" << points
                  << "\"/>\n";
            }
            points.clear();
        };
        for (std::size_t i = 0; i < std::min(line.x.size(), line.y.size()); ++i) {
            if (!std::isfinite(line.x[i]) || !std::isfinite(line.y[i])) {
                flush();
                continue;
            }
            if (!points.empty()) points += ' ';
            points += fmt(frame.px(line.x[i])) + "," + fmt(frame.py(line.y[i]));
        }
        flush();
        const double ly = kTop + 14.0 * (k + 1);
        s << "<line x1=\"" << kWidth - 170 << "\" y1=\"" << ly - 4 << "\" x2=\"" << kWidth - 150 << "\" y2=\""
          << ly - 4 << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        s << "<text x=\"" << kWidth - 145 << "\" y=\"" << ly << "\">" << escape(line.label) << "</text>\n";
    }
    s << "</svg>\n";
    return s.str();
}

std::string histogram_svg(const std::string& title, const std::string& x_label,
                          const std::vector<backtest::HistogramBin>& bins) {
    double x0 = bins.empty() ? 0.0 : bins.front().bin_left;
    double x1 = bins.empty() ? 1.0 : bins.back().bin_right;
    double y1 = 0.0;
    for (const auto& b : bins) y1 = std::max(y1, b.density);
    double y0 = 0.0;
    widen(x0, x1);
    widen(y0, y1);
    const Frame frame{x0, x1, y0, y1};

    std::ostringstream s;
    axes(s, frame, title, x_label, "probability");
    for (const auto& b : bins) {
        if (b.density <= 0.0) continue;
        const double left = frame.px(b.bin_left);
        const double right = frame.px(b.bin_right);
        const double top = frame.py(b.density);
        s << "<rect x=\"" << fmt(left) << "\" y=\"" << fmt(top) << "\" width=\"" << fmt(std::max(right - left, 0.5))
          << "\" height=\"" << fmt(frame.py(0.0) - top) << "\" fill=\"" << (b.bin_right <= 0.0 ? "#d62728" : "#1f77b4")
          << "\"/>\n";
    }
    if (x0 < 0.0 && x1 > 0.0) {
        s << "<line x1=\"" << fmt(frame.px(0.0)) << "\" y1=\"" << kTop << "\" x2=\"" << fmt(frame.px(0.0))
          << "\" y2=\"" << kHeight - kBottom << "\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n";
    }
    s << "</svg>\n";
    return s.str();
}

}  // namespace kelly::cli
