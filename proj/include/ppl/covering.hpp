#pragma once

// The sphere-covering side of the sectional support function: geodesic-cap
// process with the exact intensity and radius law, exact circle coverage
// checking at m = 2, the Stevens closed form as an independent oracle, the
// covering functional J, and numerical verification of the radius-law
// convergence hypotheses.

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "ppl/exactlaw.hpp"
#include "ppl/log_domain.hpp"

namespace ppl::covering {

using exactlaw::ModelParams;

/// The covering problem derived from (d, L, m, r): cap centers arrive with
/// surface intensity Lambda, geodesic radii are a * rho with rho drawn from
/// the tail law stored here.
struct CoveringInstance {
  int d = 0;
  int m = 0;
  double r = 0.0;
  double a = 0.0;           ///< sqrt(1-r^2)/(r sqrt(d))
  LogValue log_lambda;      ///< ln Lambda per unit surface measure
  double p = 0.0;           ///< beta parameter 1 + (d-m)/2
  double q = 0.0;           ///< beta parameter m/2
  double log_beta_x0 = 0.0; ///< ln B(1-r^2; p, q), the tail normalizer
  double rho_max = 0.0;     ///< arccos(r)/a, the rescaled radius cap

  /// P(R > rho): 1 at 0, 0 at rho >= rho_max, non-increasing between.
  double radius_tail(double rho) const;
};

/// One arc of the circle: closed interval [center - half_width, center + half_width].
struct Arc {
  double center;      ///< in [0, 2 pi)
  double half_width;  ///< > 0
};

struct ArcSet {
  std::vector<Arc> arcs;
};

struct CoverEstimate {
  double p;
  double std_error;
  long n_reps;
  bool approximate;  ///< true for the m = 3 grid-checked path
};

struct AppendixReport {
  double sup_tail_ratio;   ///< sup over the grid of tail / inflated-Rayleigh tail
  bool ratio_ok;           ///< sup <= 1 + 1e-9
  double w1;               ///< W1 distance between log radius laws
  double bound_shape;      ///< log^2(d r^2) / (d r^2)
  double w1_over_bound;    ///< w1 / bound_shape
  double decay2_value;     ///< a + d^{-1} log^{2+gamma}(1/a) at gamma = 1/4
};

CoveringInstance build_instance(const ModelParams& params, int m, double r);

/// Inverse of the radius tail at probability u: tail(rho) = 1 - u within
/// 1e-10.  Closed form when m = 2, monotone bisection otherwise.
double sample_radius(const CoveringInstance& instance, double u);

/// Poisson(2 pi Lambda) arcs with uniform centers and half-widths a * rho.
ArcSet sample_covering_m2(const CoveringInstance& instance, std::uint64_t seed);

/// Exact sweep over closed arcs (endpoint ties count as covered).
bool is_circle_covered(const ArcSet& arcs);

/// Total measure of the uncovered part of the circle.
double uncovered_measure(const ArcSet& arcs);

/// Probability that n i.i.d. uniform arcs of length fraction f cover the
/// circle: sum_k (-1)^k C(n,k) (1 - k f)_+^{n-1}, compensated summation.
double stevens_covering_probability(int n, double arc_fraction);

/// Monte Carlo covering probability (m = 2 exact; m = 3 grid-approximate).
CoverEstimate estimate_covering_probability(const CoveringInstance& instance, long n_reps,
                                            std::uint64_t seed);

/// The covering functional
///   J = b a^D v Lambda - ln(1/(b a^D)) - D ln ln(1/(b a^D)) - ln alpha,
/// with D = m-1, v = m kappa_m, and alpha, b from the supplied radius
/// moments (E[R^{D-1}], E[R^D]).
double janson_functional(LogValue log_lambda, int m, double a,
                         std::pair<double, double> moments);

/// Checks the two radius-law hypotheses at (d, m, r): the uniform tail-ratio
/// bound against the (1 + w/ln(1/a))-inflated Rayleigh tail, and the W1
/// distance of the log radius law to the log Rayleigh law.
AppendixReport verify_appendix_hypotheses(const ModelParams& params, int m, double r, double w);

namespace detail {
/// Same checks against an arbitrary tail (used to validate the verifier).
AppendixReport verify_tails(const std::function<double(double)>& tail, double rho_max, double a,
                            double w, double d_r_squared);
}  // namespace detail

}  // namespace ppl::covering
