#pragma once

// Log-domain special functions: log-gamma, unit-ball volumes, complete and
// lower incomplete beta.  Everything is carried in log domain because the
// quantities downstream (cap volumes, survival probabilities) routinely
// reach e^{+-10^6}.

#include <cstdint>
#include <utility>

#include "ppl/log_domain.hpp"

namespace ppl::specfun {

/// Arguments of the lower incomplete beta function B(x; p, q).
struct BetaArgs {
  double x;  ///< in [0, 1]
  double p;  ///< > 0
  double q;  ///< > 0
};

struct SeriesControl {
  double rel_tol = 1e-16;       ///< stop when next term is this small relative to the sum
  long max_terms = 1'000'000;   ///< hard cap before falling back / failing
};

/// ln Gamma(z), z > 0.
LogValue log_gamma(double z);

/// ln kappa_d, the log volume of the d-dimensional unit ball.
LogValue log_unit_ball_volume(int d);

/// ln B(p, q) = ln Gamma(p) + ln Gamma(q) - ln Gamma(p+q).
LogValue log_complete_beta(double p, double q);

/// ln B(x; p, q) = ln \int_0^x v^{p-1} (1-v)^{q-1} dv.
///
/// Evaluated through the series
///   B(x;p,q) = x^p (1-x)^q / p * sum_n ((p+q)_n / (p+1)_n) x^n,
/// with the Pochhammer ratios accumulated multiplicatively in linear domain
/// and the overall scale kept in log domain.  When the projected term count
/// exceeds control.max_terms (x near 1), falls back to
/// B(p,q) - (tail integral by quadrature).
LogValue log_lower_incomplete_beta(const BetaArgs& args, const SeriesControl& control = {});

/// Two-sided bracket for B(x; p, q) from the elementary series bounds:
/// base = x^p (1-x)^{q-1} / p and base times 1/(1 - (q-1)/(p+1) * x/(1-x)),
/// ordered so that first <= B(x;p,q) <= second.
/// Requires 0 < x < 1 and (p+q) x < p+1.
std::pair<LogValue, LogValue> incomplete_beta_bounds(const BetaArgs& args);

namespace detail {
/// ln \int_x^1 v^{p-1} (1-v)^{q-1} dv by panel quadrature in log domain.
double log_beta_tail_quadrature(double x, double p, double q);
}  // namespace detail

}  // namespace ppl::specfun
