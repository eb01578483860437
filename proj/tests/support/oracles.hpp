#pragma once
// Reference implementations that share no code with kelly_core: exact
// rational sums, adaptive quadrature and high-precision finite differences.

#include <cmath>
#include <cstdint>
#include <vector>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace oracle {

using rational = boost::multiprecision::cpp_rational;
using big_int = boost::multiprecision::cpp_int;
using hp = boost::multiprecision::cpp_bin_float_50;

inline big_int choose(int T, int x) {
    big_int r = 1;
    for (int i = 1; i <= x; ++i) r = r * (T - x + i) / i;
    return r;
}

inline rational pow_rational(const rational& base, int n) {
    rational r = 1;
    for (int i = 0; i < n; ++i) r *= base;
    return r;
}

/// Sum_{x<=alpha} (A+Bx)^2 C(T,x) p^x (1-p)^(T-x) in exact rational arithmetic.
/// The double inputs are converted exactly, so the only rounding is the
/// final conversion back to double.
inline double exact_weighted_sum(double A, double B, int alpha, int T, double p) {
    const rational a(A);
    const rational b(B);
    const rational q(p);
    const rational one_minus_q = rational(1) - q;
    rational sum = 0;
    for (int x = 0; x <= alpha; ++x) {
        const rational w = a + b * x;
        sum += w * w * rational(choose(T, x)) * pow_rational(q, x) * pow_rational(one_minus_q, T - x);
    }
    return static_cast<double>(sum);
}

/// Exact binomial cdf, for T small enough that rationals stay cheap.
inline double exact_binom_cdf(int T, int alpha, double p) { return exact_weighted_sum(1.0, 0.0, alpha, T, p); }

/// ln C(T, x) from the exact integer.
inline double exact_log_binomial(int T, int x) {
    return static_cast<double>(log(hp(choose(T, x))));
}

/// Unnormalized incomplete beta by tanh-sinh quadrature in 50-digit
/// arithmetic. The integrand is expressed through exp/log so endpoint
/// singularities for a or b below 1 are handled by the quadrature.
inline double quadrature_inc_beta(double z, double a, double b) {
    if (z == 0.0) return 0.0;
    boost::math::quadrature::tanh_sinh<hp> integrator;
    const hp ha(a);
    const hp hb(b);
    auto f = [&](hp t) -> hp {
        if (t <= 0 || t >= 1) return hp(0);
        return exp((ha - 1) * log(t) + (hb - 1) * log1p(-t));
    };
    return static_cast<double>(integrator.integrate(f, hp(0), hp(z), hp(1e-30)));
}

/// Binomial pmf as a function of p, in 50-digit arithmetic.
inline hp binomial_pmf_hp(int T, int x, const hp& p) {
    return hp(choose(T, x)) * pow(p, x) * pow(1 - p, T - x);
}

/// a f''(p) + b f'(p) + c f(p) for f = binomial pmf, with central
/// differences of step h refined by a three-level Richardson tableau.
inline double omega_by_finite_differences(double a, double b, double c, int T, int x, double p,
                                          double h = 1e-5) {
    const hp hp_p(p);
    auto f = [&](const hp& q) { return binomial_pmf_hp(T, x, q); };
    auto first = [&](const hp& step) { return (f(hp_p + step) - f(hp_p - step)) / (2 * step); };
    auto second = [&](const hp& step) {
        return (f(hp_p + step) - 2 * f(hp_p) + f(hp_p - step)) / (step * step);
    };
    auto richardson = [](const auto& d, const hp& step) {
        const hp d0 = d(step);
        const hp d1 = d(step / 2);
        const hp d2 = d(step / 4);
        const hp r1 = (4 * d1 - d0) / 3;
        const hp r2 = (4 * d2 - d1) / 3;
        return (16 * r2 - r1) / 15;
    };
    const hp step(h);
    const hp value = hp(a) * richardson(second, step) + hp(b) * richardson(first, step) + hp(c) * f(hp_p);
    return static_cast<double>(value);
}

/// (A + Bx)^2 pmf(x) in 50-digit arithmetic.
inline double weighted_pmf(double A, double B, int T, int x, double p) {
    const hp w = hp(A) + hp(B) * x;
    return static_cast<double>(w * w * binomial_pmf_hp(T, x, hp(p)));
}

inline double relative_error(double value, double reference) {
    if (value == reference) return 0.0;
    return std::fabs(value - reference) / std::fabs(reference);
}

}  // namespace oracle
