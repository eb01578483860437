#pragma once

// Special functions backing the closed-form downside sum.
//
// Convention: `inc_beta` is the UNNORMALIZED incomplete beta function
//
//     B_z(a, b) = integral_0^z t^(a-1) (1-t)^(b-1) dt,
//
// not the regularized I_z(a, b) = B_z(a, b) / B(a, b) that most libraries
// return. Use `inc_beta_regularized` when the normalized value is wanted.

namespace kelly::specfun {

struct IncBetaArgs {
    double z;
    double a;
    double b;
};

/// ln C(T, x). Exact (0.0) at x == 0 and x == T.
[[nodiscard]] double log_binomial(long long T, long long x);

/// ln of the binomial pmf C(T,x) p^x (1-p)^(T-x); -inf where the pmf is 0.
[[nodiscard]] double log_binomial_pmf(long long T, long long x, double p);

/// Complete beta function B(a, b) = Gamma(a)Gamma(b)/Gamma(a+b).
[[nodiscard]] double beta(double a, double b);

/// Unnormalized incomplete beta B_z(a, b). Throws DomainError unless
/// 0 <= z <= 1, a > 0, b > 0.
[[nodiscard]] double inc_beta(const IncBetaArgs& args);

/// Regularized incomplete beta I_z(a, b).
[[nodiscard]] double inc_beta_regularized(const IncBetaArgs& args);

/// Sum_{x=0}^{alpha} C(T,x) p^x (1-p)^(T-x), through the incomplete-beta
/// identity (T!/(alpha!(T-alpha-1)!)) B_{1-p}(T-alpha, alpha+1).
[[nodiscard]] double binom_cdf(long long T, long long alpha, double p);

}  // namespace kelly::specfun
