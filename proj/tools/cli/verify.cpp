#include "cli/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "kelly/rng.hpp"
#include "kelly/specfun.hpp"

namespace kelly::cli {

namespace {

using sortino::AffineWeight;

std::string describe(AffineWeight w, int alpha, int T, double p) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "A=%.17g B=%.17g alpha=%d T=%d p=%.17g", w.A, w.B, alpha, T, p);
    return buf;
}

double relative_error(double got, double want) {
    const double diff = std::fabs(got - want);
    if (diff == 0.0) return 0.0;
    return diff / std::max(std::fabs(want), 1e-300);
}

void record(CheckResult& check, bool ok, const std::string& detail) {
    ++check.total;
    if (ok) {
        ++check.passed;
    } else if (check.first_failure.empty()) {
        check.first_failure = detail;
    }
}

CheckResult closed_vs_direct(const VerifyOptions& options, const ClosedFormFn& closed) {
    CheckResult check{"closed_form_vs_direct", "1e-9", 0, 0, {}};
    Stream rng(options.seed, 1);
    for (int i = 0; i < options.trials; ++i) {
        const AffineWeight w{-2.0 + 4.0 * rng.uniform(), -2.0 + 4.0 * rng.uniform()};
        const int T = 1 + static_cast<int>(rng.uniform() * 50.0);
        const int alpha = static_cast<int>(rng.uniform() * T);
        const double p = 0.05 + 0.9 * rng.uniform();
        const double direct = sortino::weighted_sum_direct(w, alpha, T, p);
        const double got = closed(w, alpha, T, p);
        const double err = relative_error(got, direct);
        char tail[96];
        std::snprintf(tail, sizeof tail, " closed=%.17g direct=%.17g", got, direct);
        record(check, err <= 1e-9, describe(w, alpha, T, p) + tail);
    }
    return check;
}

CheckResult moment_identity(const ClosedFormFn& closed) {
    CheckResult check{"full_support_moment", "1e-12", 0, 0, {}};
    for (int T = 1; T <= 40; T += 3) {
        for (double p : {0.1, 0.35, 0.5, 0.8}) {
            const AffineWeight w{0.3, -0.02};
            const double direct = sortino::weighted_sum_direct(w, T, T, p);
            const double got = closed(w, T, T, p);
            record(check, relative_error(got, direct) <= 1e-12, describe(w, T, T, p));
        }
    }
    return check;
}

// Binomial pmf in extended precision for finite differences.
long double pmf(int T, int x, long double p) {
    return std::exp(static_cast<long double>(specfun::log_binomial(T, x)) + x * std::log(p) +
                    (T - x) * std::log1p(-p));
}

CheckResult omega_identity(const VerifyOptions& options) {
    CheckResult check{"omega_identity", "1e-6", 0, 0, {}};
    Stream rng(options.seed, 2);
    constexpr long double h = 1e-5L;
    for (int i = 0; i < options.omega_trials; ++i) {
        const AffineWeight w{-2.0 + 4.0 * rng.uniform(), -2.0 + 4.0 * rng.uniform()};
        const int T = 1 + static_cast<int>(rng.uniform() * 20.0);
        const double p = 0.05 + 0.9 * rng.uniform();
        const auto k = sortino::omega_coefficients(w, T, p);
        for (int x = 0; x <= T; ++x) {
            auto first = [&](long double step) { return (pmf(T, x, p + step) - pmf(T, x, p - step)) / (2 * step); };
            auto second = [&](long double step) {
                return (pmf(T, x, p + step) - 2 * pmf(T, x, p) + pmf(T, x, p - step)) / (step * step);
            };
            const long double d1 = (4 * first(h / 2) - first(h)) / 3;
            const long double d2 = (4 * second(h / 2) - second(h)) / 3;
            const long double f = pmf(T, x, p);
            const long double lhs = k.a * d2 + k.b * d1 + k.c * f;
            const long double weight = static_cast<long double>(w.A) + static_cast<long double>(w.B) * x;
            const long double rhs = weight * weight * f;
            // Relative to the largest operator term: the three terms cancel
            // down to rhs, which can itself be near zero.
            const long double scale =
                std::max({std::fabs(k.a * d2), std::fabs(k.b * d1), std::fabs(k.c * f), std::fabs(rhs)});
            const bool ok = std::fabs(lhs - rhs) <= 1e-6L * scale;
            char tail[64];
            std::snprintf(tail, sizeof tail, " x=%d", x);
            record(check, ok, describe(w, -1, T, p) + tail);
        }
    }
    return check;
}

CheckResult special_functions(const VerifyOptions& options) {
    CheckResult check{"special_functions", "1e-12 / 1e-10", 0, 0, {}};
    auto expect = [&](const char* what, double got, double want, double tol) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "%s: got %.17g want %.17g", what, got, want);
        record(check, relative_error(got, want) <= tol, buf);
    };
    expect("inc_beta(0.7,1,1)", specfun::inc_beta({0.7, 1.0, 1.0}), 0.7, 1e-12);
    expect("inc_beta(0.5,2,2)", specfun::inc_beta({0.5, 2.0, 2.0}), 1.0 / 12.0, 1e-12);
    expect("inc_beta(1,3,4)", specfun::inc_beta({1.0, 3.0, 4.0}), 1.0 / 60.0, 1e-12);
    expect("inc_beta(0,3,4)", specfun::inc_beta({0.0, 3.0, 4.0}), 0.0, 0.0);
    expect("log_binomial(4,2)", specfun::log_binomial(4, 2), std::log(6.0), 1e-14);
    expect("log_binomial(5,0)", specfun::log_binomial(5, 0), 0.0, 0.0);

    Stream rng(options.seed, 3);
    for (int i = 0; i < 200; ++i) {
        const double z = rng.uniform();
        const double a = 0.5 + 30.0 * rng.uniform();
        const double b = 0.5 + 30.0 * rng.uniform();
        const double lhs = specfun::inc_beta({z, a, b});
        const double rhs = specfun::beta(a, b) - specfun::inc_beta({1.0 - z, b, a});
        // Symmetry only holds to the absolute precision of the subtraction.
        record(check, std::fabs(lhs - rhs) <= 1e-12 * specfun::beta(a, b),
               "symmetry z=" + std::to_string(z) + " a=" + std::to_string(a) + " b=" + std::to_string(b));
    }
    for (int T = 0; T <= 60; ++T) {
        for (int step = 1; step <= 9; ++step) {
            const double p = step / 10.0;
            long double cumulative = 0.0L;
            for (int alpha = 0; alpha <= T; ++alpha) {
                cumulative += std::exp(static_cast<long double>(specfun::log_binomial_pmf(T, alpha, p)));
                const double got = specfun::binom_cdf(T, alpha, p);
                record(check, std::fabs(got - static_cast<double>(cumulative)) <= 1e-10,
                       "binom_cdf T=" + std::to_string(T) + " alpha=" + std::to_string(alpha) +
                           " p=" + std::to_string(p));
            }
        }
    }
    return check;
}

}  // namespace

std::vector<CheckResult> run_verify(const VerifyOptions& options) {
    const ClosedFormFn closed = options.closed_form ? options.closed_form : [](AffineWeight w, int alpha, int T,
                                                                               double p) {
        return sortino::weighted_sum_closed(w, alpha, T, p);
    };
    return {closed_vs_direct(options, closed), moment_identity(closed), omega_identity(options),
            special_functions(options)};
}

bool print_verify_table(const std::vector<CheckResult>& results, std::ostream& out) {
    bool all = true;
    for (const auto& r : results) {
        out << (r.ok() ? "PASS  " : "FAIL  ") << r.name << ": " << r.passed << '/' << r.total << " within "
            << r.tolerance << '\n';
        if (!r.ok()) {
            out << "      first failure: " << r.first_failure << '\n';
            all = false;
        }
    }
    out << (all ? "all checks passed" : "verification FAILED") << '\n';
    return all;
}

}  // namespace kelly::cli
