#include "kelly/sortino.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "kelly/errors.hpp"
#include "kelly/specfun.hpp"
#include "parallel.hpp"

namespace kelly::sortino {

namespace {

using real = long double;

constexpr double kInf = std::numeric_limits<double>::infinity();

double log_odds(double theta) { return std::log1p(theta) - std::log1p(-theta); }

void check_sum_args(int alpha, int T, double p, const char* who) {
    if (T < 0) throw DomainError(std::string(who) + ": T must be >= 0");
    if (alpha > T) {
        throw DomainError(std::string(who) + ": alpha=" + std::to_string(alpha) + " exceeds T=" +
                          std::to_string(T));
    }
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError(std::string(who) + ": p must lie in [0, 1]");
}

void check_positive_theta(const AllocationParams& params, const char* who) {
    validate(params);
    if (!(params.theta > 0.0)) {
        throw DomainError(std::string(who) + ": theta must lie in (0, 1), the threshold divides by "
                                             "ln((1+theta)/(1-theta))");
    }
}

// G(w) = (w/T) ln(1+theta) + ((T-w)/T) ln(1-theta): realized growth rate
// after w wins in T bets.
double growth_after(int wins, int T, double theta) {
    const double frac = static_cast<double>(wins) / T;
    return frac * std::log1p(theta) + (1.0 - frac) * std::log1p(-theta);
}

}  // namespace

std::string_view to_string(DownsideMode mode) {
    return mode == DownsideMode::target_aware ? "target_aware" : "paper_fidelity";
}

std::string_view to_string(EvalPath path) {
    return path == EvalPath::direct_sum ? "direct_sum" : "closed_form";
}

std::string_view to_string(SweepParam param) { return param == SweepParam::p ? "p" : "mu"; }

DownsideMode parse_mode(std::string_view name) {
    if (name == "target_aware" || name == "target") return DownsideMode::target_aware;
    if (name == "paper_fidelity" || name == "paper") return DownsideMode::paper_fidelity;
    throw DomainError("unknown downside mode '" + std::string(name) + "'");
}

EvalPath parse_path(std::string_view name) {
    if (name == "direct_sum" || name == "direct") return EvalPath::direct_sum;
    if (name == "closed_form" || name == "closed") return EvalPath::closed_form;
    throw DomainError("unknown evaluation path '" + std::string(name) + "'");
}

SweepParam parse_sweep_param(std::string_view name) {
    if (name == "p") return SweepParam::p;
    if (name == "mu") return SweepParam::mu;
    throw DomainError("unknown sweep parameter '" + std::string(name) + "' (expected p or mu)");
}

OmegaCoefficients omega_coefficients(AffineWeight w, int T, double p) {
    const double A = w.A;
    const double B = w.B;
    const double t = T;
    OmegaCoefficients k;
    k.a = B * B * (p - 1.0) * (p - 1.0) * p * p;
    k.b = -B * (p - 1.0) * p * (2.0 * A + B * (2.0 * p * (t - 1.0) + 1.0));
    k.c = A * A + 2.0 * A * B * p * t + B * B * p * t * (p * (t - 1.0) + 1.0);
    return k;
}

double weighted_sum_direct(AffineWeight w, int alpha, int T, double p) {
    check_sum_args(alpha, T, p, "weighted_sum_direct");
    real sum = 0.0L;
    for (int x = 0; x <= alpha; ++x) {
        const double log_pmf = specfun::log_binomial_pmf(T, x, p);
        if (log_pmf == -kInf) continue;
        const real weight = static_cast<real>(w.A) + static_cast<real>(w.B) * x;
        sum += weight * weight * std::exp(static_cast<real>(log_pmf));
    }
    return static_cast<double>(sum);
}

double weighted_sum_closed(AffineWeight w, int alpha, int T, double p, bool cross_check) {
    check_sum_args(alpha, T, p, "weighted_sum_closed");
    if (alpha < 0) return 0.0;

    const OmegaCoefficients k = omega_coefficients(w, T, p);
    double value = 0.0;
    if (alpha == T) {
        value = k.c;  // Omega applied to total probability 1
    } else if (p == 0.0) {
        value = w.A * w.A;  // all mass at x = 0 <= alpha
    } else if (p == 1.0) {
        value = 0.0;  // all mass at x = T > alpha
    } else {
        const real log_factor = specfun::log_binomial(T, alpha) + std::log(static_cast<real>(T - alpha)) +
                                (alpha - 1) * std::log(static_cast<real>(p)) +
                                (T - alpha - 2) * std::log1p(-static_cast<real>(p));
        const real bracket = -static_cast<real>(k.a) * alpha + static_cast<real>(k.a) * p * (T - 1) +
                             static_cast<real>(k.b) * (p - 1.0) * p;
        // T!/(alpha!(T-alpha-1)!) B_{1-p}(T-alpha, alpha+1) is the cumulative
        // binomial, which binom_cdf evaluates in regularized form.
        const real tail = static_cast<real>(k.c) * specfun::binom_cdf(T, alpha, p);
        value = static_cast<double>(std::exp(log_factor) * bracket + tail);
    }

    if (cross_check) {
        const double direct = weighted_sum_direct(w, alpha, T, p);
        const double scale = std::max(std::fabs(direct), std::fabs(value));
        if (std::fabs(value - direct) > 1e-6 * scale && std::fabs(value - direct) > 1e-300) {
            throw NumericalConsistencyError(
                "weighted_sum_closed: closed form " + std::to_string(value) + " vs direct " +
                std::to_string(direct) + " at A=" + std::to_string(w.A) + " B=" + std::to_string(w.B) +
                " alpha=" + std::to_string(alpha) + " T=" + std::to_string(T) + " p=" + std::to_string(p));
        }
    }
    return value;
}

DownsideThreshold downside_threshold(const AllocationParams& params) {
    check_positive_theta(params, "downside_threshold");
    const int T = params.T;
    const double theta = params.theta;
    const double odds = log_odds(theta);

    DownsideThreshold out;
    out.t_max_real = std::min(static_cast<double>(T), T * (2.0 * params.mu - std::log1p(-theta * theta)) / odds);

    // G(w) < mu  <=>  w < T (mu - ln(1-theta)) / ln((1+theta)/(1-theta)).
    const double bound = T * (params.mu - std::log1p(-theta)) / odds;
    int w = -1;
    if (bound > T) {
        w = T;
    } else if (bound > 0.0) {
        w = static_cast<int>(std::ceil(bound)) - 1;
    }
    // Settle rounding at the boundary against the defining predicate.
    while (w >= 0 && !(growth_after(w, T, theta) < params.mu)) --w;
    while (w < T && growth_after(w + 1, T, theta) < params.mu) ++w;
    out.w_max = w;
    return out;
}

int paper_cutoff(double t_max_real) {
    if (std::isnan(t_max_real)) throw DomainError("paper_cutoff: threshold is NaN");
    if (t_max_real < 0.0) return -1;
    const double floored = std::floor(t_max_real);
    return static_cast<int>(floored == t_max_real ? floored - 1.0 : floored);
}

AffineWeight affine_weight(const AllocationParams& params, DownsideMode mode) {
    const double odds = log_odds(params.theta);
    if (mode == DownsideMode::target_aware) {
        return {std::log1p(-params.theta) - params.mu, odds / params.T};
    }
    return {0.5 * std::log1p(-params.theta * params.theta), odds / (2.0 * params.T)};
}

DownsideResult downside_deviation(const AllocationParams& params, DownsideMode mode, EvalPath path) {
    const DownsideThreshold threshold = downside_threshold(params);
    DownsideResult out;
    out.t_max_real = threshold.t_max_real;
    out.mode = mode;
    out.path = path;
    out.alpha = mode == DownsideMode::target_aware ? threshold.w_max : paper_cutoff(threshold.t_max_real);
    if (out.alpha < 0) return out;

    const AffineWeight w = affine_weight(params, mode);
    const double squared = path == EvalPath::direct_sum ? weighted_sum_direct(w, out.alpha, params.T, params.p)
                                                        : weighted_sum_closed(w, out.alpha, params.T, params.p);
    out.D = std::sqrt(std::max(squared, 0.0));
    return out;
}

bool SortinoResult::infinite() const noexcept { return std::isinf(phi); }

SortinoResult sortino_ratio(const AllocationParams& params, DownsideMode mode, EvalPath path) {
    validate(params);
    if (params.theta < 0.0) throw DomainError("sortino_ratio: negative theta is not supported");

    SortinoResult out;
    if (params.theta == 0.0) {
        // No bet: G_T == 0 surely, so the shortfall below mu is max(mu, 0).
        out.numerator = -params.mu;
        out.downside.D = std::max(params.mu, 0.0);
        out.downside.alpha = params.mu > 0.0 ? params.T : -1;
        out.downside.t_max_real = std::numeric_limits<double>::quiet_NaN();
        out.downside.mode = mode;
        out.downside.path = path;
        out.phi = params.mu > 0.0 ? -1.0 : (params.mu < 0.0 ? kInf : 0.0);
        return out;
    }

    out.numerator = growth_rate(params.p, params.theta) - params.mu;
    out.downside = downside_deviation(params, mode, path);
    if (out.downside.D > 0.0) {
        out.phi = out.numerator / out.downside.D;
    } else if (out.numerator > 0.0) {
        out.phi = kInf;
    } else if (out.numerator == 0.0) {
        out.phi = 0.0;
    } else if (mode == DownsideMode::paper_fidelity) {
        // The literal cutoff can drop every configuration while the mean is
        // still below mu.
        out.phi = -kInf;
    } else {
        // Every outcome is >= mu, so the mean is too, up to rounding.
        if (out.numerator < -1e-12 * std::max(1.0, std::fabs(params.mu))) {
            throw std::logic_error("sortino_ratio: zero downside with a negative excess return");
        }
        out.phi = 0.0;
    }
    return out;
}

OptimizationResult optimize_theta(double p, int T, double mu, const OptimizeOptions& options) {
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("optimize_theta: p must lie in [0, 1]");
    if (T < 1) throw DomainError("optimize_theta: T must be >= 1");
    if (!std::isfinite(mu)) throw DomainError("optimize_theta: mu must be finite");
    if (!(options.grid_step > 0.0) || !(options.theta_max > 0.0 && options.theta_max < 1.0)) {
        throw DomainError("optimize_theta: need grid_step > 0 and 0 < theta_max < 1");
    }

    const auto last = static_cast<std::size_t>(std::floor(options.theta_max / options.grid_step + 1e-9));
    std::vector<int> cutoffs(last + 1);

    OptimizationResult best;
    best.grid_step = options.grid_step;
    best.evaluations = last + 1;
    std::size_t best_index = 0;
    for (std::size_t k = 0; k <= last; ++k) {
        const double theta = std::min(static_cast<double>(k) * options.grid_step, options.theta_max);
        const SortinoResult r = sortino_ratio({p, T, mu, theta}, options.mode, options.path);
        cutoffs[k] = r.downside.alpha;
        if (k == 0 || r.phi > best.phi_star) {
            best.theta_star = theta;
            best.phi_star = r.phi;
            best.downside = r.downside;
            best_index = k;
        }
    }

    std::size_t lo = best_index;
    std::size_t hi = best_index;
    if (best_index > 0) {
        while (lo > 1 && cutoffs[lo - 1] == cutoffs[best_index]) --lo;
        while (hi < last && cutoffs[hi + 1] == cutoffs[best_index]) ++hi;
    }
    best.staircase_cell = {std::min(lo * options.grid_step, options.theta_max),
                           std::min(hi * options.grid_step, options.theta_max)};
    return best;
}

std::vector<double> sweep_points(const SweepSpec& spec) {
    if (!(spec.step > 0.0) || !(spec.from <= spec.to) || !std::isfinite(spec.from) || !std::isfinite(spec.to)) {
        throw DomainError("sweep: need from <= to and step > 0");
    }
    const auto count = static_cast<std::size_t>(std::floor((spec.to - spec.from) / spec.step + 1e-9)) + 1;
    std::vector<double> points(count);
    for (std::size_t i = 0; i < count; ++i) points[i] = spec.from + static_cast<double>(i) * spec.step;
    return points;
}

std::vector<SweepRow> sweep(const SweepSpec& spec, const OptimizeOptions& options, unsigned threads) {
    const std::vector<double> points = sweep_points(spec);
    std::vector<SweepRow> rows(points.size());
    detail::parallel_for(points.size(), threads, [&](std::size_t i) {
        const double p = spec.param == SweepParam::p ? points[i] : spec.p;
        const double mu = spec.param == SweepParam::mu ? points[i] : spec.mu;
        rows[i] = {points[i], optimize_theta(p, spec.T, mu, options)};
    });
    return rows;
}

}  // namespace kelly::sortino
