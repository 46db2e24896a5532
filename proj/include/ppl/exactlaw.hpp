#pragma once

// Exact one-directional law of the support function of the Poisson polytope
// in the unit ball, origin-containment probabilities, regime classification,
// and the Gumbel normalizers / implicit root equations for both the
// one-directional and multi-directional limits.

#include <functional>
#include <utility>

#include "ppl/log_domain.hpp"
#include "ppl/specfun.hpp"

namespace ppl::exactlaw {

/// Model parameterization: dimension d and L = ln(lambda * kappa_d), the log
/// of the mean number of points in the unit ball.  L is the universal knob;
/// lambda itself is astronomically large in every interesting regime.
struct ModelParams {
  int d;
  double L;

  /// Finite-d surrogate of the growth hypothesis lambda*kappa_d > 2d:
  /// satisfied when L > ln(2d) + ln(1.01).
  bool hypothesis_ok() const;
  /// True when L <= 2 ln d; the multi-directional subcritical theory wants
  /// L >> ln d, so results there should be read with caution.
  bool weak_intensity_warning() const;
};

enum class RegimeKind { subcritical, critical, supercritical };

struct Regime {
  RegimeKind kind;
  double x = 0.0;  ///< critical limit of L/d; meaningful when kind == critical
};

const char* regime_name(RegimeKind k);

struct GumbelNormalizers1D {
  double center;  ///< L / (d+1)
  double log_m;   ///< ln m(d), the squared-scale normalizer
};

struct GumbelNormalizersMD {
  int m;
  double a_frak;  ///< additive normalizer
  double b_frak;  ///< multiplicative normalizer, (m-1) d s
  double s_frak;  ///< s(d) = ln sqrt(d (e^{2L/d} - 1))
};

struct JansonConstants {
  int m;
  double alpha;  ///< clustering constant for Rayleigh radii
  double b;      ///< normalized mean cap measure on S^{m-1}
  double A_m;
  double B_m;    ///< = alpha (m-1)^{m-1} / b
};

struct OriginProbability {
  double value;
  bool tail_bound_flag;  ///< true when returned as 1 - (normal tail bound)
};

struct ATauSolution {
  double a;  ///< scale parameter
  double r;  ///< = (1 + d a^2)^{-1/2}
};

/// ln |C^d(r)|: log volume of the spherical cap at height r in the unit ball.
LogValue log_cap_volume(int d, double r);

/// ln P(h <= r) for the support function h of the Poisson polytope.
LogValue log_sf_cdf(const ModelParams& params, double r);

/// Same CDF evaluated at x = 1 - r^2 (precision-safe when r -> 1).
LogValue log_sf_cdf_x(const ModelParams& params, double x_beta);

/// Inverse CDF by monotone bisection; |log_sf_cdf(r) - ln u| <= 1e-10.
double sf_inverse_cdf(const ModelParams& params, double u);

/// Inverse CDF returning w = -ln(1 - r^2); keeps full precision near r = 1.
double sf_inverse_cdf_w(const ModelParams& params, double u);

/// Probability that the convex hull of n i.i.d. symmetric points in R^d
/// contains the origin (Wendel).  Exact arithmetic for small n, log-domain
/// binomial tails up to n ~ 1e5.
double wendel_origin_probability(int d, long n);

/// Poisson mixture of Wendel's probability over N ~ Poisson(e^L).
OriginProbability origin_probability(const ModelParams& params);

/// Classify the regime of an intensity recipe d -> L(d) by estimating
/// lim L(d)/d over a doubling ladder starting at d0.
Regime classify_regime(const std::function<double(double)>& log_intensity_of_d, double d0);

/// Centering and scale of the one-directional Gumbel limit.
GumbelNormalizers1D gumbel_normalizers_1d(const ModelParams& params, const Regime& regime);

/// Unique root r of (1-r^2)^{(d+1)/2} / r = sqrt(2 pi d)/(lambda kappa_d) e^{-tau}.
double solve_r_tau(const ModelParams& params, double tau);

/// The four constants of the covering limit for Rayleigh radii.
JansonConstants janson_constants(int m);

/// Clustering constant for a radius law given its two relevant moments
/// E[R^{D-1}], E[R^D] (D = manifold dimension).
double janson_alpha_generic(int D, double moment_Dm1, double moment_D);

/// Normalized mean cap measure for a radius law on a manifold of dimension D
/// and volume v: b = pi^{D/2} E[R^D] / (Gamma(1 + D/2) v).
double janson_b_generic(int D, double moment_D, double manifold_volume);

/// k-th moment of the standard Rayleigh distribution: 2^{k/2} Gamma(1 + k/2).
double rayleigh_moment(int k);

/// Unique root a of
///   sqrt(2) pi^{(m-1)/2}/Gamma(m/2) * lambda kappa_d * a / (1 + 1/(d a^2))^{d/2}
///     = (m-1) ln(1/a) + (m-1) ln ln(1/a) + ln B_m + tau,
/// solved in log domain; residual <= 1e-9.  Also returns r = (1+d a^2)^{-1/2}.
ATauSolution solve_a_tau(const ModelParams& params, int m, double tau);

/// Residual of the equation above at a given a (log domain), for diagnostics.
double a_tau_residual(const ModelParams& params, int m, double tau, double a);

/// Normalizers of the multi-directional Gumbel limit.
GumbelNormalizersMD gumbel_normalizers_md(const ModelParams& params, int m);

/// First-order location of h (m = 1) or of the sectional infimum h_{d,m}:
/// sqrt(2L/d), sqrt(1 - e^{-2x}), or 1 - e^{-2L/(d+1)}/2 by regime.
double predict_regime_value(const ModelParams& params, const Regime& regime, int m = 1);

}  // namespace ppl::exactlaw
