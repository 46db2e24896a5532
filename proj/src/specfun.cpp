#include "ppl/specfun.hpp"

#include <array>
#include <cmath>

namespace ppl::specfun {

namespace {

constexpr double kLogPi = 1.1447298858494001741;  // ln(pi)

void check_beta_args(const BetaArgs& a) {
  if (!(a.x >= 0.0 && a.x <= 1.0)) throw domain_error("beta: x outside [0,1]");
  if (!(a.p > 0.0) || !std::isfinite(a.p)) throw domain_error("beta: p must be positive");
  if (!(a.q > 0.0) || !std::isfinite(a.q)) throw domain_error("beta: q must be positive");
}

}  // namespace

LogValue log_gamma(double z) {
  if (!(z > 0.0) || !std::isfinite(z)) throw domain_error("log_gamma: z must be positive");
  return LogValue(std::lgamma(z));
}

LogValue log_unit_ball_volume(int d) {
  if (d < 1) throw domain_error("log_unit_ball_volume: d must be >= 1");
  return LogValue(0.5 * d * kLogPi - std::lgamma(1.0 + 0.5 * d));
}

LogValue log_complete_beta(double p, double q) {
  if (!(p > 0.0) || !(q > 0.0)) throw domain_error("log_complete_beta: arguments must be positive");
  return LogValue(std::lgamma(p) + std::lgamma(q) - std::lgamma(p + q));
}

namespace detail {

// 15-point Gauss-Legendre nodes/weights on [-1, 1].
constexpr std::array<double, 15> kGLNodes = {
    -0.9879925180204854, -0.9372733924007060, -0.8482065834104272,
    -0.7244177313601700, -0.5709721726085388, -0.3941513470775634,
    -0.2011940939974345, 0.0,                 0.2011940939974345,
    0.3941513470775634,  0.5709721726085388,  0.7244177313601700,
    0.8482065834104272,  0.9372733924007060,  0.9879925180204854};
constexpr std::array<double, 15> kGLWeights = {
    0.03075324199611727, 0.07036604748810812, 0.1071592204671719,
    0.1395706779261543,  0.1662692058169939,  0.1861610000155622,
    0.1984314853271116,  0.2025782419255613,  0.1984314853271116,
    0.1861610000155622,  0.1662692058169939,  0.1395706779261543,
    0.1071592204671719,  0.07036604748810812, 0.03075324199611727};

// ln \int_lo^hi w^{q-1} (1-w)^{p-1} dw for 0 <= lo < hi <= 1, via one
// Gauss-Legendre panel with the integrand rescaled by its max log.
double log_panel(double lo, double hi, double p, double q) {
  const double half = 0.5 * (hi - lo);
  const double mid = 0.5 * (hi + lo);
  double logf[15];
  double m = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < 15; ++i) {
    const double w = mid + half * kGLNodes[i];
    const double lf = (q - 1.0) * std::log(w) + (p - 1.0) * std::log1p(-w);
    logf[i] = lf;
    if (lf > m) m = lf;
  }
  if (std::isinf(m)) return m;
  double s = 0.0;
  for (int i = 0; i < 15; ++i) s += kGLWeights[i] * std::exp(logf[i] - m);
  return m + std::log(half * s);
}

double log_beta_tail_quadrature(double x, double p, double q) {
  // Substituting w = 1 - v maps the tail onto [0, 1-x] with integrand
  // w^{q-1} (1-w)^{p-1}; panels shrink geometrically toward w = 0 where the
  // q < 1 singularity sits, and toward w = 1-x when p is large.
  const double w0 = 1.0 - x;
  if (w0 <= 0.0) return -std::numeric_limits<double>::infinity();
  double acc = -std::numeric_limits<double>::infinity();
  double hi = w0;
  for (int k = 0; k < 2400 && hi > 0.0; ++k) {
    double lo = hi * 0.5;
    if (lo < w0 * 1e-120 || lo < 5e-324) lo = 0.0;
    if (lo == 0.0) {
      // Innermost panel: integrand ~ w^{q-1}, integrate the power exactly
      // against the nearly constant (1-w)^{p-1} factor at the midpoint.
      const double lf = (p - 1.0) * std::log1p(-0.5 * hi);
      acc = log_add(acc, q * std::log(hi) - std::log(q) + lf);
      break;
    }
    acc = log_add(acc, log_panel(lo, hi, p, q));
    hi = lo;
  }
  return acc;
}

}  // namespace detail

LogValue log_lower_incomplete_beta(const BetaArgs& args, const SeriesControl& control) {
  check_beta_args(args);
  const double x = args.x, p = args.p, q = args.q;
  if (x == 0.0) return LogValue::zero();
  if (x == 1.0) return log_complete_beta(p, q);
  if (q == 1.0) return LogValue(p * std::log(x) - std::log(p));  // series sums in closed form

  // Projected term count: the term ratio tends to x from one side, with a
  // transient hump of length ~ (x(p+q-1)-p)/(1-x) when q > 1.
  const double one_minus_x = 1.0 - x;
  double projected = 38.0 / std::max(one_minus_x, 1e-300);
  if (q > 1.0) projected += std::max(0.0, x * (p + q - 1.0) - p) / std::max(one_minus_x, 1e-300);
  if (projected > static_cast<double>(control.max_terms)) {
    const double log_tail = detail::log_beta_tail_quadrature(x, p, q);
    const double log_complete = log_complete_beta(p, q).value;
    if (log_tail >= log_complete - 1e-9)
      throw numeric_error("log_lower_incomplete_beta: complement cancellation", log_complete);
    return LogValue(log_diff(log_complete, log_tail));
  }

  const double scale0 = p * std::log(x) + q * std::log1p(-x) - std::log(p);
  double scale = 0.0;
  double sum = 1.0;
  double term = 1.0;
  long n = 1;
  for (; n <= control.max_terms; ++n) {
    term *= x * (p + q + n - 1.0) / (p + n);
    sum += term;
    if (term <= sum * control.rel_tol) break;
    if (sum > 1e280) {
      scale += std::log(sum);
      term /= sum;
      sum = 1.0;
    }
  }
  const double result = scale0 + scale + std::log(sum);
  if (n > control.max_terms)
    throw numeric_error("log_lower_incomplete_beta: series did not converge", result);
  return LogValue(result);
}

std::pair<LogValue, LogValue> incomplete_beta_bounds(const BetaArgs& args) {
  check_beta_args(args);
  const double x = args.x, p = args.p, q = args.q;
  if (!(x > 0.0 && x < 1.0)) throw domain_error("incomplete_beta_bounds: need 0 < x < 1");
  if (!((p + q) * x < p + 1.0))
    throw domain_error("incomplete_beta_bounds: need (p+q) x < p+1");
  const double base = p * std::log(x) + (q - 1.0) * std::log1p(-x) - std::log(p);
  // (p+q)x < p+1 guarantees the correction factor is positive.
  const double log_corr = -std::log1p(-(q - 1.0) / (p + 1.0) * x / (1.0 - x));
  if (q >= 1.0) return {LogValue(base), LogValue(base + log_corr)};
  return {LogValue(base + log_corr), LogValue(base)};
}

}  // namespace ppl::specfun
