#include "cli/json_io.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "cli/format.hpp"

namespace kelly::cli {

namespace {

Date read_date(const json& value, const std::string& what) {
    const auto date = Date::parse(value.get<std::string>());
    if (!date) throw std::runtime_error(what + ": invalid date '" + value.get<std::string>() + "'");
    return *date;
}

}  // namespace

json number(double value) {
    if (std::isfinite(value)) return value;
    return format_double(value);
}

double read_number(const json& value) {
    if (value.is_string()) return parse_double(value.get<std::string>());
    return value.get<double>();
}

json to_json(const sortino::OptimizationResult& result) {
    json out;
    out["theta_star"] = number(result.theta_star);
    out["phi_star"] = number(result.phi_star);
    out["w_max"] = result.downside.alpha;
    out["D"] = number(result.downside.D);
    out["mode"] = std::string(sortino::to_string(result.downside.mode));
    out["path"] = std::string(sortino::to_string(result.downside.path));
    out["grid_step"] = number(result.grid_step);
    out["evaluations"] = result.evaluations;
    out["staircase_cell"] = json::array({number(result.staircase_cell.lo), number(result.staircase_cell.hi)});
    return out;
}

json to_json(const backtest::BacktestReport& report) {
    const auto& cfg = report.config;
    json doc;
    doc["config"] = {
        {"accuracy", number(cfg.accuracy)},
        {"horizon", cfg.horizon},
        {"mu", number(cfg.mu)},
        {"sims", cfg.sims},
        {"seed", cfg.seed},
        {"mode", std::string(sortino::to_string(cfg.mode))},
        {"path", std::string(sortino::to_string(cfg.path))},
        {"grid_step", number(cfg.grid_step)},
        {"days_per_year", cfg.days_per_year},
        {"bins", cfg.bins},
    };
    doc["allocation"] = to_json(report.allocation);
    doc["summary"] = {
        {"trades", report.trades},
        {"mean_annualized_return", number(report.mean_annualized_return)},
        {"stdev_annualized_return", number(report.stdev_annualized_return)},
        {"realized_target", number(report.realized_target)},
        {"downside_deviation", number(report.downside_deviation)},
        {"realized_sharpe", number(report.realized_sharpe)},
        {"realized_sortino", number(report.realized_sortino)},
        {"mass_above_zero", number(report.mass_above_zero)},
        {"mass_below_zero", number(report.mass_below_zero)},
        {"signal_accuracy", number(report.signal_accuracy)},
        {"horizon_hit_rate", number(report.horizon_hit_rate)},
    };
    json bins = json::array();
    for (const auto& bin : report.histogram) {
        bins.push_back({{"bin_left", number(bin.bin_left)},
                        {"bin_right", number(bin.bin_right)},
                        {"density", number(bin.density)}});
    }
    doc["histogram"] = std::move(bins);
    json periods = json::array();
    for (const auto& p : report.per_period) {
        periods.push_back({{"label", p.period.label},
                           {"start", p.period.start.to_string()},
                           {"end", p.period.end.to_string()},
                           {"count", p.count},
                           {"mean", number(p.mean)},
                           {"min", number(p.min)},
                           {"max", number(p.max)}});
    }
    doc["per_period"] = std::move(periods);
    return doc;
}

backtest::BacktestReport report_from_json(const json& doc) {
    backtest::BacktestReport r;
    const json& c = doc.at("config");
    r.config.accuracy = read_number(c.at("accuracy"));
    r.config.horizon = c.at("horizon").get<int>();
    r.config.mu = read_number(c.at("mu"));
    r.config.sims = c.at("sims").get<int>();
    r.config.seed = c.at("seed").get<std::uint64_t>();
    r.config.mode = sortino::parse_mode(c.at("mode").get<std::string>());
    r.config.path = sortino::parse_path(c.at("path").get<std::string>());
    r.config.grid_step = read_number(c.at("grid_step"));
    r.config.days_per_year = c.at("days_per_year").get<int>();
    r.config.bins = c.at("bins").get<int>();

    const json& a = doc.at("allocation");
    r.allocation.theta_star = read_number(a.at("theta_star"));
    r.allocation.phi_star = read_number(a.at("phi_star"));
    r.allocation.downside.alpha = a.at("w_max").get<int>();
    r.allocation.downside.D = read_number(a.at("D"));
    r.allocation.downside.mode = sortino::parse_mode(a.at("mode").get<std::string>());
    r.allocation.downside.path = sortino::parse_path(a.at("path").get<std::string>());
    r.allocation.grid_step = read_number(a.at("grid_step"));
    r.allocation.evaluations = a.at("evaluations").get<std::size_t>();
    r.allocation.staircase_cell = {read_number(a.at("staircase_cell").at(0)),
                                   read_number(a.at("staircase_cell").at(1))};

    const json& s = doc.at("summary");
    r.trades = s.at("trades").get<std::size_t>();
    r.mean_annualized_return = read_number(s.at("mean_annualized_return"));
    r.stdev_annualized_return = read_number(s.at("stdev_annualized_return"));
    r.realized_target = read_number(s.at("realized_target"));
    r.downside_deviation = read_number(s.at("downside_deviation"));
    r.realized_sharpe = read_number(s.at("realized_sharpe"));
    r.realized_sortino = read_number(s.at("realized_sortino"));
    r.mass_above_zero = read_number(s.at("mass_above_zero"));
    r.mass_below_zero = read_number(s.at("mass_below_zero"));
    r.signal_accuracy = read_number(s.at("signal_accuracy"));
    r.horizon_hit_rate = read_number(s.at("horizon_hit_rate"));

    for (const auto& bin : doc.at("histogram")) {
        r.histogram.push_back(
            {read_number(bin.at("bin_left")), read_number(bin.at("bin_right")), read_number(bin.at("density"))});
    }
    for (const auto& p : doc.at("per_period")) {
        backtest::PeriodStats stats;
        stats.period.label = p.at("label").get<std::string>();
        stats.period.start = read_date(p.at("start"), "per_period");
        stats.period.end = read_date(p.at("end"), "per_period");
        stats.count = p.at("count").get<std::size_t>();
        stats.mean = read_number(p.at("mean"));
        stats.min = read_number(p.at("min"));
        stats.max = read_number(p.at("max"));
        r.per_period.push_back(std::move(stats));
    }
    return r;
}

std::vector<backtest::Period> parse_periods(std::istream& in) {
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::runtime_error(std::string("periods: ") + e.what());
    }
    if (!doc.is_array()) throw std::runtime_error("periods: expected a JSON array");
    std::vector<backtest::Period> out;
    for (std::size_t i = 0; i < doc.size(); ++i) {
        const json& entry = doc[i];
        const std::string where = "periods[" + std::to_string(i) + "]";
        if (!entry.is_object() || !entry.contains("label") || !entry.contains("start") || !entry.contains("end") ||
            !entry["label"].is_string() || !entry["start"].is_string() || !entry["end"].is_string()) {
            throw std::runtime_error(where + ": expected {\"label\", \"start\", \"end\"} strings");
        }
        backtest::Period period{entry["label"].get<std::string>(), read_date(entry["start"], where),
                                read_date(entry["end"], where)};
        if (period.end < period.start) throw std::runtime_error(where + ": end precedes start");
        out.push_back(std::move(period));
    }
    return out;
}

}  // namespace kelly::cli
