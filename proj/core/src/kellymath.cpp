#include "kelly/kellymath.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "kelly/errors.hpp"

namespace kelly {

namespace {

void check_probability(double p, const char* who) {
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError(std::string(who) + ": p must lie in [0, 1]");
}

void check_fraction(double theta, const char* who) {
    if (!(std::fabs(theta) < 1.0)) throw DomainError(std::string(who) + ": |theta| must be < 1");
}

// ln((1+theta)/(1-theta)), the log odds of one win against one loss.
double log_odds(double theta) { return std::log1p(theta) - std::log1p(-theta); }

}  // namespace

void validate(const AllocationParams& params) {
    check_probability(params.p, "AllocationParams");
    if (params.T < 1) throw DomainError("AllocationParams: T must be >= 1");
    if (!std::isfinite(params.mu)) throw DomainError("AllocationParams: mu must be finite");
    check_fraction(params.theta, "AllocationParams");
}

double growth_rate(double p, double theta) {
    check_probability(p, "growth_rate");
    check_fraction(theta, "growth_rate");
    // Zero-probability branches must not contribute, even as 0 * log(0).
    double g = 0.0;
    if (p < 1.0) g += (1.0 - p) * std::log1p(-theta);
    if (p > 0.0) g += p * std::log1p(theta);
    return g;
}

KellyAllocation kelly_allocation(double p) {
    check_probability(p, "kelly_allocation");
    const double theta = 2.0 * p - 1.0;
    return {theta, theta <= 0.0};
}

GrowthStats growth_stats(const AllocationParams& params, double benchmark) {
    validate(params);
    const double p = params.p;
    const double theta = params.theta;
    const double T = params.T;
    const double odds = log_odds(theta);

    GrowthStats stats;
    stats.mean = growth_rate(p, theta);
    stats.variance = odds * odds * p * (1.0 - p) / T;
    if (p == 0.0 || p == 1.0) return stats;

    if (theta == 0.0) {
        if (benchmark == 0.0) {
            stats.sharpe = std::sqrt(T / (p * (1.0 - p))) * (p - 0.5);
        } else {
            stats.sharpe = -std::copysign(std::numeric_limits<double>::infinity(), benchmark);
        }
        return stats;
    }
    stats.sharpe = (stats.mean - benchmark) / std::sqrt(stats.variance);
    return stats;
}

double sharpe_ratio(const AllocationParams& params, double benchmark) {
    if (!(params.p > 0.0 && params.p < 1.0)) throw DomainError("sharpe_ratio: p must lie in (0, 1)");
    return *growth_stats(params, benchmark).sharpe;
}

double kelly_sharpe_scaled(double p) {
    if (!(p > 0.5 && p < 1.0)) throw DomainError("kelly_sharpe: p must lie in (0.5, 1)");
    const double q = 1.0 - p;
    return std::sqrt(1.0 / (p * q)) * (p - 0.5 + std::log(4.0 * p * q) / (2.0 * std::log(p / q)));
}

double kelly_sharpe(double p, int T) {
    if (T < 1) throw DomainError("kelly_sharpe: T must be >= 1");
    return std::sqrt(static_cast<double>(T)) * kelly_sharpe_scaled(p);
}

double sharpe_stationarity_residual(double theta) {
    check_fraction(theta, "sharpe_stationarity_residual");
    return (1.0 - theta) * std::log1p(-theta) + (1.0 + theta) * std::log1p(theta);
}

std::optional<double> find_stationarity_root(double lo, double hi, int samples) {
    if (!(lo < hi) || lo <= -1.0 || hi >= 1.0 || samples < 1) {
        throw DomainError("find_stationarity_root: need -1 < lo < hi < 1 and samples >= 1");
    }
    const double width = (hi - lo) / samples;
    double left = lo;
    double f_left = sharpe_stationarity_residual(left);
    for (int i = 1; i <= samples; ++i) {
        const double right = (i == samples) ? hi : lo + width * i;
        const double f_right = sharpe_stationarity_residual(right);
        if (i < samples && f_right == 0.0) return right;
        if ((f_left < 0.0) != (f_right < 0.0) && f_left != 0.0 && f_right != 0.0) {
            double a = left;
            double b = right;
            double fa = f_left;
            for (int it = 0; it < 200 && b - a > 1e-15; ++it) {
                const double mid = 0.5 * (a + b);
                const double fm = sharpe_stationarity_residual(mid);
                if (fm == 0.0) return mid;
                if ((fm < 0.0) == (fa < 0.0)) {
                    a = mid;
                    fa = fm;
                } else {
                    b = mid;
                }
            }
            return 0.5 * (a + b);
        }
        left = right;
        f_left = f_right;
    }
    return std::nullopt;
}

}  // namespace kelly
