#include "cli/commands.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "cli/format.hpp"
#include "cli/json_io.hpp"
#include "cli/svg.hpp"
#include "cli/verify.hpp"
#include "kelly/backtest.hpp"
#include "kelly/errors.hpp"
#include "kelly/kellymath.hpp"
#include "kelly/sortino.hpp"

namespace kelly::cli {

namespace {

namespace fs = std::filesystem;

/// Raised for flag values that violate a domain rule; maps to exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

const CLI::Validator kOpenUnit =
    CLI::Validator([](std::string& s) -> std::string {
        double v = 0.0;
        try {
            v = std::stod(s);
        } catch (...) {
            return "not a number";
        }
        return v > 0.0 && v < 1.0 ? std::string() : "must lie strictly between 0 and 1";
    }, "(0,1)");

const CLI::Validator kModes = CLI::IsMember({"target_aware", "paper_fidelity"});
const CLI::Validator kPaths = CLI::IsMember({"closed_form", "direct_sum"});

void write_file(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write '" + path.string() + "'");
    f << content;
    if (!f) throw std::runtime_error("failed writing '" + path.string() + "'");
}

struct OptimizeFlags {
    double p = 0.6;
    int T = 100;
    double mu = 0.03;
    std::string mode = "target_aware";
    std::string path = "closed_form";
    double grid_step = 5e-4;

    sortino::OptimizeOptions options() const {
        sortino::OptimizeOptions o;
        o.grid_step = grid_step;
        o.mode = sortino::parse_mode(mode);
        o.path = sortino::parse_path(path);
        return o;
    }
};

void add_model_flags(CLI::App* cmd, OptimizeFlags& f) {
    cmd->add_option("--mode", f.mode, "Downside definition: target_aware or paper_fidelity")
        ->check(kModes)
        ->capture_default_str();
    cmd->add_option("--path", f.path, "Evaluation of the downside sum: closed_form or direct_sum")
        ->check(kPaths)
        ->capture_default_str();
    cmd->add_option("--grid-step", f.grid_step, "Allocation grid step")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
}

// ---- verify ---------------------------------------------------------------

struct VerifyFlags {
    int trials = 1000;
    std::uint64_t seed = 20190828;
};

int cmd_verify(const VerifyFlags& f, std::ostream& out) {
    VerifyOptions options;
    options.trials = f.trials;
    options.seed = f.seed;
    const bool ok = print_verify_table(run_verify(options), out);
    return ok ? kSuccess : kFailure;
}

// ---- kelly ----------------------------------------------------------------

struct KellyFlags {
    double p = 0.75;
    int T = 1;
    bool sweep = false;
    double from = 0.505;
    double to = 0.995;
    double step = 0.005;
    std::string out;
    std::string svg;
};

int cmd_kelly(const KellyFlags& f, std::ostream& out) {
    if (f.sweep) {
        if (!(f.from > 0.5 && f.to < 1.0 && f.from <= f.to && f.step > 0.0)) {
            throw UsageError("kelly --sweep: need 0.5 < from <= to < 1 and step > 0");
        }
        sortino::SweepSpec grid;
        grid.from = f.from;
        grid.to = f.to;
        grid.step = f.step;
        std::ostringstream csv;
        csv << "p,sharpe_scaled\n";
        LineSeries line{"Kelly Sharpe (scaled)", {}, {}};
        for (double p : sortino::sweep_points(grid)) {
            const double s = kelly_sharpe_scaled(p);
            csv << format_double(p) << ',' << format_double(s) << '\n';
            line.x.push_back(p);
            line.y.push_back(s);
        }
        if (f.out.empty()) {
            out << csv.str();
        } else {
            write_file(f.out, csv.str());
        }
        if (!f.svg.empty()) {
            write_file(f.svg, line_chart_svg("Kelly Sharpe ratio", "p", "Sharpe / sqrt(T)", {line}));
        }
        return kSuccess;
    }

    const KellyAllocation k = kelly_allocation(f.p);
    const GrowthStats stats = growth_stats({f.p, f.T, 0.0, k.theta});
    json doc;
    doc["p"] = number(f.p);
    doc["T"] = f.T;
    doc["theta_kelly"] = number(k.theta);
    doc["no_bet"] = k.no_bet;
    doc["growth"] = number(stats.mean);
    doc["variance"] = number(stats.variance);
    doc["sharpe"] = number(*stats.sharpe);
    doc["sharpe_scaled"] = number(*stats.sharpe / std::sqrt(static_cast<double>(f.T)));
    out << doc.dump(2) << '\n';
    return kSuccess;
}

// ---- optimize -------------------------------------------------------------

int cmd_optimize(const OptimizeFlags& f, std::ostream& out) {
    const auto result = sortino::optimize_theta(f.p, f.T, f.mu, f.options());
    json doc;
    doc["p"] = number(f.p);
    doc["T"] = f.T;
    doc["mu"] = number(f.mu);
    const json fields = to_json(result);
    for (const auto& [key, value] : fields.items()) doc[key] = value;
    out << doc.dump(2) << '\n';
    return kSuccess;
}

// ---- sweep ----------------------------------------------------------------

struct SweepFlags {
    OptimizeFlags model;
    std::string param = "p";
    double from = 0.0;
    double to = 0.0;
    double step = 0.0;
    std::string out;
    std::string svg;
    std::string json_out;
    unsigned threads = 0;
};

std::string sweep_csv(const std::vector<sortino::SweepRow>& rows) {
    std::ostringstream csv;
    csv << "swept_param,theta_star,phi_star,w_max,D\n";
    for (const auto& row : rows) {
        csv << format_double(row.value) << ',' << format_double(row.result.theta_star) << ','
            << format_double(row.result.phi_star) << ',' << row.result.downside.alpha << ','
            << format_double(row.result.downside.D) << '\n';
    }
    return csv.str();
}

int cmd_sweep(const SweepFlags& f, std::ostream& out) {
    sortino::SweepSpec spec;
    spec.param = sortino::parse_sweep_param(f.param);
    spec.from = f.from;
    spec.to = f.to;
    spec.step = f.step;
    spec.p = f.model.p;
    spec.T = f.model.T;
    spec.mu = f.model.mu;
    if (!(spec.from <= spec.to && spec.step > 0.0)) throw UsageError("sweep: need from <= to and step > 0");
    if (spec.param == sortino::SweepParam::p && !(spec.from > 0.0 && spec.to < 1.0)) {
        throw UsageError("sweep --param p: the range must lie inside (0, 1)");
    }
    if (spec.param == sortino::SweepParam::mu && !(spec.p > 0.0 && spec.p < 1.0)) {
        throw UsageError("sweep --param mu: --p must lie in (0, 1)");
    }

    const auto rows = sortino::sweep(spec, f.model.options(), f.threads);
    const std::string csv = sweep_csv(rows);
    if (f.out.empty()) {
        out << csv;
    } else {
        write_file(f.out, csv);
    }
    if (!f.json_out.empty()) {
        json doc = json::array();
        for (const auto& row : rows) {
            json entry;
            entry[f.param] = number(row.value);
            const json fields = to_json(row.result);
            for (const auto& [key, value] : fields.items()) entry[key] = value;
            doc.push_back(std::move(entry));
        }
        write_file(f.json_out, doc.dump(2) + "\n");
    }
    if (!f.svg.empty()) {
        LineSeries theta{"optimal allocation", {}, {}};
        LineSeries phi{"optimal Sortino", {}, {}};
        for (const auto& row : rows) {
            theta.x.push_back(row.value);
            theta.y.push_back(row.result.theta_star);
            phi.x.push_back(row.value);
            phi.y.push_back(row.result.phi_star);
        }
        const std::string x_label = spec.param == sortino::SweepParam::p ? "p" : "mu";
        const fs::path base(f.svg);
        write_file(base, line_chart_svg("Optimal allocation vs " + x_label, x_label, "theta*", {theta}));
        fs::path phi_path = base;
        phi_path.replace_filename(base.stem().string() + "_sortino" + base.extension().string());
        write_file(phi_path, line_chart_svg("Optimal Sortino ratio vs " + x_label, x_label, "Phi*", {phi}));
    }
    return kSuccess;
}

// ---- backtest -------------------------------------------------------------

struct BacktestFlags {
    OptimizeFlags model;
    std::string prices;
    int sims = 1000;
    std::uint64_t seed = 42;
    std::string periods;
    std::string out = "backtest_out";
    bool hist_svg = false;
    int bins = 200;
    int days_per_year = 252;
    int trades_reps = 1;
    unsigned threads = 0;
};

std::string trades_csv(const backtest::PriceSeries& series, const backtest::SignalConfig& cfg, double theta,
                       int replications) {
    std::ostringstream csv;
    csv << "entry_date,direction,raw_return,strategy_return,annualized_return\n";
    for (int rep = 0; rep < replications; ++rep) {
        const auto signals = backtest::simulate_signals(series, cfg, rep);
        for (const auto& t : backtest::run_strategy(series, signals, theta, cfg.horizon, cfg.days_per_year)) {
            csv << t.entry_date.to_string() << ',' << t.direction << ',' << format_double(t.raw_return) << ','
                << format_double(t.strategy_return) << ',' << format_double(t.annualized_return) << '\n';
        }
    }
    return csv.str();
}

int cmd_backtest(const BacktestFlags& f, std::ostream& out, std::ostream& err) {
    backtest::SignalConfig cfg;
    cfg.accuracy = f.model.p;
    cfg.horizon = f.model.T;
    cfg.mu = f.model.mu;
    cfg.sims = f.sims;
    cfg.seed = f.seed;
    cfg.mode = sortino::parse_mode(f.model.mode);
    cfg.path = sortino::parse_path(f.model.path);
    cfg.grid_step = f.model.grid_step;
    cfg.days_per_year = f.days_per_year;
    cfg.bins = f.bins;
    cfg.threads = f.threads;
    try {
        backtest::validate(cfg);
    } catch (const DomainError& e) {
        throw UsageError(std::string("backtest: ") + e.what());
    }

    const backtest::PriceSeries series = backtest::ingest_prices_file(f.prices);
    std::vector<backtest::Period> periods;
    if (!f.periods.empty()) {
        std::ifstream in(f.periods, std::ios::binary);
        if (!in) throw std::runtime_error("cannot open periods file '" + f.periods + "'");
        periods = parse_periods(in);
    }

    const backtest::BacktestReport report = backtest::run_backtest(series, cfg, periods);
    for (const auto& p : report.per_period) {
        if (p.count == 0) err << "warning: period '" << p.period.label << "' contains no trades\n";
    }

    const fs::path dir(f.out);
    write_file(dir / "report.json", to_json(report).dump(2) + "\n");
    write_file(dir / "trades.csv",
               trades_csv(series, cfg, report.allocation.theta_star, std::min(f.trades_reps, cfg.sims)));

    std::ostringstream dated;
    dated << "entry_date,close,trades,mean_annualized_return\n";
    for (const auto& d : report.by_date) {
        dated << d.date.to_string() << ',' << format_double(d.close) << ',' << d.trades() << ','
              << format_double(d.mean_annualized_return()) << '\n';
    }
    write_file(dir / "returns_by_date.csv", dated.str());
    if (f.hist_svg) {
        write_file(dir / "histogram.svg",
                   histogram_svg("Return probabilities", "annualized trade return", report.histogram));
    }

    json summary;
    summary["theta_star"] = number(report.allocation.theta_star);
    summary["trades"] = report.trades;
    summary["mean_annualized_return"] = number(report.mean_annualized_return);
    summary["realized_sortino"] = number(report.realized_sortino);
    summary["realized_sharpe"] = number(report.realized_sharpe);
    summary["out"] = dir.string();
    out << summary.dump(2) << '\n';
    return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Sortino-optimal Kelly allocations and Monte Carlo backtests"};
    app.name("kelly-sortino");
    app.require_subcommand(1);

    VerifyFlags verify_flags;
    auto* verify = app.add_subcommand("verify", "Run the closed-form oracle battery");
    verify->add_option("--trials", verify_flags.trials, "Randomized closed-form tuples")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    verify->add_option("--seed", verify_flags.seed, "Battery seed")->capture_default_str();

    KellyFlags kelly_flags;
    auto* kelly = app.add_subcommand("kelly", "Classical Kelly allocation, growth and Sharpe ratio");
    kelly->add_option("--p", kelly_flags.p, "Win probability, decimal in (0,1)")->check(kOpenUnit);
    kelly->add_option("--T", kelly_flags.T, "Horizon in bet steps")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    kelly->add_flag("--sweep", kelly_flags.sweep, "Emit scaled Sharpe ratio vs p as CSV");
    kelly->add_option("--from", kelly_flags.from, "Sweep start")->capture_default_str();
    kelly->add_option("--to", kelly_flags.to, "Sweep end")->capture_default_str();
    kelly->add_option("--step", kelly_flags.step, "Sweep step")->capture_default_str();
    kelly->add_option("--out", kelly_flags.out, "Sweep CSV path (stdout if omitted)");
    kelly->add_option("--svg", kelly_flags.svg, "Sweep SVG chart path");

    OptimizeFlags optimize_flags;
    auto* optimize = app.add_subcommand("optimize", "Sortino-optimal allocation for one (p, T, mu)");
    optimize->add_option("--p", optimize_flags.p, "Win probability, decimal in (0,1)")
        ->check(kOpenUnit)
        ->capture_default_str();
    optimize->add_option("--T", optimize_flags.T, "Horizon in bet steps")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    optimize->add_option("--mu", optimize_flags.mu, "Desired log return per bet step, decimal (0.03, not 3%)")
        ->capture_default_str();
    add_model_flags(optimize, optimize_flags);

    SweepFlags sweep_flags;
    auto* sweep = app.add_subcommand("sweep", "Optimal allocation and Sortino ratio over a range of p or mu");
    sweep->add_option("--param", sweep_flags.param, "Swept parameter")
        ->check(CLI::IsMember({"p", "mu"}))
        ->required();
    sweep->add_option("--from", sweep_flags.from, "Range start")->required();
    sweep->add_option("--to", sweep_flags.to, "Range end")->required();
    sweep->add_option("--step", sweep_flags.step, "Range step")->required()->check(CLI::PositiveNumber);
    sweep->add_option("--p", sweep_flags.model.p, "Fixed p for mu sweeps")->capture_default_str();
    sweep->add_option("--T", sweep_flags.model.T, "Horizon in bet steps")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sweep->add_option("--mu", sweep_flags.model.mu, "Fixed mu for p sweeps")->capture_default_str();
    sweep->add_option("--out", sweep_flags.out, "CSV path (stdout if omitted)");
    sweep->add_option("--json", sweep_flags.json_out, "Also write the rows as JSON");
    sweep->add_option("--svg", sweep_flags.svg, "Line chart path; a second *_sortino chart is written beside it");
    sweep->add_option("--threads", sweep_flags.threads, "Worker threads (0 = all cores)");
    add_model_flags(sweep, sweep_flags.model);

    BacktestFlags bt_flags;
    bt_flags.model.p = 0.6;
    bt_flags.model.T = 100;
    bt_flags.model.mu = 0.03;
    auto* bt = app.add_subcommand("backtest", "Monte Carlo signal backtest on a closing-price series");
    bt->add_option("--prices", bt_flags.prices, "CSV with header date,close")->required();
    bt->add_option("--p", bt_flags.model.p, "Signal accuracy on the next-day move")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    bt->add_option("--T", bt_flags.model.T, "Holding period in trading days")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    bt->add_option("--mu", bt_flags.model.mu, "Desired log return per step fed to the optimizer")
        ->capture_default_str();
    bt->add_option("--sims", bt_flags.sims, "Monte Carlo replications")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    bt->add_option("--seed", bt_flags.seed, "Master seed")->capture_default_str();
    bt->add_option("--periods", bt_flags.periods, "JSON list of {label,start,end} windows");
    bt->add_option("--out", bt_flags.out, "Output directory")->capture_default_str();
    bt->add_flag("--hist-svg", bt_flags.hist_svg, "Also write histogram.svg");
    bt->add_option("--bins", bt_flags.bins, "Histogram bins")->check(CLI::PositiveNumber)->capture_default_str();
    bt->add_option("--days-per-year", bt_flags.days_per_year, "Annualization convention")
        ->check(CLI::IsMember({252, 365}))
        ->capture_default_str();
    bt->add_option("--trades-reps", bt_flags.trades_reps, "Replications written to trades.csv")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    bt->add_option("--threads", bt_flags.threads, "Worker threads (0 = all cores); output does not depend on it");
    add_model_flags(bt, bt_flags.model);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        for (auto* sub : app.get_subcommands()) err << sub->help();
        return kUsage;
    }

    try {
        if (verify->parsed()) return cmd_verify(verify_flags, out);
        if (kelly->parsed()) return cmd_kelly(kelly_flags, out);
        if (optimize->parsed()) return cmd_optimize(optimize_flags, out);
        if (sweep->parsed()) return cmd_sweep(sweep_flags, out);
        if (bt->parsed()) return cmd_backtest(bt_flags, out, err);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const DomainError& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kFailure;
    }
    return kUsage;
}

}  // namespace kelly::cli
