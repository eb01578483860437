#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "kelly/kellymath.hpp"

namespace kelly::sortino {

/// Which downside sum defines the denominator of the Sortino ratio.
enum class DownsideMode {
    /// Sum over win counts w with G(w) < mu of (G(w) - mu)^2 pmf(w):
    /// the lower partial moment E[min(G_T - mu, 0)^2].
    target_aware,
    /// Literal reading: weight (A + Bx)^2 with A = ln(1-theta^2)/2,
    /// B = ln((1+theta)/(1-theta))/(2T), cut off at floor(T_max) where T_max
    /// is the threshold on the sum of +/-1 outcomes. mu only enters through
    /// the cutoff.
    paper_fidelity,
};

/// How a weighted binomial sum is evaluated.
enum class EvalPath { direct_sum, closed_form };

[[nodiscard]] std::string_view to_string(DownsideMode mode);
[[nodiscard]] std::string_view to_string(EvalPath path);
/// Throws DomainError on an unknown name.
[[nodiscard]] DownsideMode parse_mode(std::string_view name);
[[nodiscard]] EvalPath parse_path(std::string_view name);

/// Affine weight A + Bx whose square multiplies the binomial pmf.
struct AffineWeight {
    double A = 0.0;
    double B = 0.0;
};

/// Coefficients of Omega = a d^2/dp^2 + b d/dp + c, chosen so that Omega
/// applied to C(T,x)p^x(1-p)^(T-x) yields (A + Bx)^2 C(T,x)p^x(1-p)^(T-x)
/// for every x.
struct OmegaCoefficients {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
};

[[nodiscard]] OmegaCoefficients omega_coefficients(AffineWeight w, int T, double p);

/// Sum_{x=0}^{alpha} (A + Bx)^2 C(T,x) p^x (1-p)^(T-x), summed term by term
/// in log space. alpha < 0 gives 0; alpha > T throws DomainError.
[[nodiscard]] double weighted_sum_direct(AffineWeight w, int alpha, int T, double p);

/// Same sum as weighted_sum_direct through the incomplete-beta closed form
///
///   T!/(alpha!(T-alpha-1)!) [ p^(alpha-1) (1-p)^(T-alpha-2)
///                             (-a alpha + a p (T-1) + b (p-1) p)
///                           + c B_{1-p}(T-alpha, alpha+1) ].
///
/// alpha == T uses the full-support moment identity (the sum equals c).
/// With `cross_check` set, the result is compared to the direct sum and a
/// NumericalConsistencyError is thrown beyond 1e-6 relative.
[[nodiscard]] double weighted_sum_closed(AffineWeight w, int alpha, int T, double p,
                                         bool cross_check = false);

struct DownsideThreshold {
    /// min(T, T (2 mu - ln(1-theta^2)) / ln((1+theta)/(1-theta))): threshold
    /// on the +/-1 outcome sum, in [-T, T] coordinates.
    double t_max_real = 0.0;
    /// Largest win count w in [0, T] with G(w) < mu, or -1 if there is none.
    int w_max = -1;
};

/// Requires theta in (0, 1); throws DomainError at theta == 0.
[[nodiscard]] DownsideThreshold downside_threshold(const AllocationParams& params);

/// Summation cutoff of the literal mode: floor(t_max_real), minus one when
/// t_max_real is itself an integer (strict inequality).
[[nodiscard]] int paper_cutoff(double t_max_real);

/// The affine weight for a mode. In target-aware mode
/// A = ln(1-theta) - mu and B = ln((1+theta)/(1-theta)) / T so that
/// A + Bw = G(w) - mu.
[[nodiscard]] AffineWeight affine_weight(const AllocationParams& params, DownsideMode mode);

struct DownsideResult {
    double D = 0.0;           ///< downside deviation, >= 0
    int alpha = -1;           ///< cutoff actually summed to
    double t_max_real = 0.0;  ///< unfloored threshold
    DownsideMode mode = DownsideMode::target_aware;
    EvalPath path = EvalPath::closed_form;
};

/// Requires theta in (0, 1). D = 0 (not an error) when the cutoff is negative.
[[nodiscard]] DownsideResult downside_deviation(const AllocationParams& params,
                                                DownsideMode mode = DownsideMode::target_aware,
                                                EvalPath path = EvalPath::closed_form);

struct SortinoResult {
    /// (growth_rate - mu) / D. +/-infinity when D == 0 with a nonzero
    /// numerator, 0 when both vanish.
    double phi = 0.0;
    double numerator = 0.0;
    DownsideResult downside;

    [[nodiscard]] bool infinite() const noexcept;
};

/// Sortino ratio of the growth rate. theta == 0 is the no-bet limit
/// (phi = -1 for mu > 0, +inf for mu < 0, 0 for mu == 0). Negative theta
/// throws DomainError.
[[nodiscard]] SortinoResult sortino_ratio(const AllocationParams& params,
                                          DownsideMode mode = DownsideMode::target_aware,
                                          EvalPath path = EvalPath::closed_form);

struct OptimizeOptions {
    double grid_step = 5e-4;
    double theta_max = 1.0 - 1e-6;
    DownsideMode mode = DownsideMode::target_aware;
    EvalPath path = EvalPath::closed_form;
};

struct ThetaInterval {
    double lo = 0.0;
    double hi = 0.0;
};

struct OptimizationResult {
    double theta_star = 0.0;
    double phi_star = 0.0;
    DownsideResult downside;  ///< at theta_star
    double grid_step = 0.0;
    std::size_t evaluations = 0;
    /// Grid points around theta_star that share its summation cutoff.
    ThetaInterval staircase_cell;
};

/// Exhaustive grid search of sortino_ratio over theta in {0, h, 2h, ...}
/// up to theta_max. Ties go to the smallest theta. Requires 0 <= p <= 1.
[[nodiscard]] OptimizationResult optimize_theta(double p, int T, double mu,
                                                const OptimizeOptions& options = {});

enum class SweepParam { p, mu };

[[nodiscard]] std::string_view to_string(SweepParam param);
[[nodiscard]] SweepParam parse_sweep_param(std::string_view name);

struct SweepSpec {
    SweepParam param = SweepParam::p;
    double from = 0.0;
    double to = 0.0;
    double step = 0.0;
    double p = 0.5;  ///< held fixed when sweeping mu
    int T = 90;
    double mu = 0.0;  ///< held fixed when sweeping p
};

struct SweepRow {
    double value = 0.0;
    OptimizationResult result;
};

/// Points from, from + step, ... up to `to` (inclusive within 1e-9 of a
/// step). Always at least one point.
[[nodiscard]] std::vector<double> sweep_points(const SweepSpec& spec);

/// optimize_theta at every sweep point, in sweep order. Points are
/// evaluated on up to `threads` workers (0 = hardware concurrency).
[[nodiscard]] std::vector<SweepRow> sweep(const SweepSpec& spec, const OptimizeOptions& options = {},
                                          unsigned threads = 0);

}  // namespace kelly::sortino
