#include "ppl/exactlaw.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace ppl::exactlaw {

using specfun::BetaArgs;
using specfun::log_complete_beta;
using specfun::log_lower_incomplete_beta;
using specfun::log_unit_ball_volume;

namespace {

constexpr double kLn2 = 0.6931471805599453094;
constexpr double kLogPi = 1.1447298858494001741;
constexpr double kLog2Pi = 1.8378770664093454836;

void check_params(const ModelParams& p) {
  if (p.d < 2) throw domain_error("ModelParams: d must be >= 2");
  if (!std::isfinite(p.L)) throw domain_error("ModelParams: L must be finite");
}

double ln_factorial(int n) { return std::lgamma(n + 1.0); }

}  // namespace

bool ModelParams::hypothesis_ok() const {
  return L > std::log(2.0 * d) + std::log(1.01);
}

bool ModelParams::weak_intensity_warning() const { return L <= 2.0 * std::log((double)d); }

const char* regime_name(RegimeKind k) {
  switch (k) {
    case RegimeKind::subcritical: return "subcritical";
    case RegimeKind::critical: return "critical";
    case RegimeKind::supercritical: return "supercritical";
  }
  return "?";
}

LogValue log_cap_volume(int d, double r) {
  if (d < 2) throw domain_error("log_cap_volume: d must be >= 2");
  if (!(r >= 0.0 && r <= 1.0)) throw domain_error("log_cap_volume: r outside [0,1]");
  if (r == 1.0) return LogValue::zero();
  const double x = (1.0 - r) * (1.0 + r);
  const LogValue beta = log_lower_incomplete_beta({x, 0.5 * (d + 1), 0.5});
  return LogValue(log_unit_ball_volume(d - 1).value - kLn2 + beta.value);
}

LogValue log_sf_cdf_x(const ModelParams& params, double x_beta) {
  check_params(params);
  if (!(x_beta >= 0.0 && x_beta <= 1.0)) throw domain_error("log_sf_cdf: x outside [0,1]");
  if (x_beta == 0.0) return LogValue(0.0);  // probability one
  const int d = params.d;
  const double log_beta = log_lower_incomplete_beta({x_beta, 0.5 * (d + 1), 0.5}).value;
  const double exponent = params.L - log_unit_ball_volume(d).value +
                          log_unit_ball_volume(d - 1).value - kLn2 + log_beta;
  return LogValue(-std::exp(exponent));
}

LogValue log_sf_cdf(const ModelParams& params, double r) {
  if (!(r >= 0.0 && r <= 1.0)) throw domain_error("log_sf_cdf: r outside [0,1]");
  return log_sf_cdf_x(params, (1.0 - r) * (1.0 + r));
}

double sf_inverse_cdf_w(const ModelParams& params, double u) {
  check_params(params);
  if (!(u > 0.0 && u < 1.0)) throw domain_error("sf_inverse_cdf: u outside (0,1)");
  const double target = std::log(u);
  // Bisection in w = -ln(1 - r^2); the CDF is strictly increasing in w.
  double lo = 1e-300, hi = 1400.0;
  double flo = log_sf_cdf_x(params, 1.0).value - target;  // w = 0
  if (flo > 0.0) return 0.0;                               // u below CDF(0)
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double f = log_sf_cdf_x(params, std::exp(-mid)).value - target;
    if (std::fabs(f) <= 1e-10) return mid;
    if (f < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double sf_inverse_cdf(const ModelParams& params, double u) {
  const double w = sf_inverse_cdf_w(params, u);
  return std::sqrt(-std::expm1(-w));
}

double wendel_origin_probability(int d, long n) {
  if (d < 1) throw domain_error("wendel: d must be >= 1");
  if (n < 0) throw domain_error("wendel: n must be >= 0");
  if (n <= d) return 0.0;
  const long nm1 = n - 1;
  if (nm1 <= 52) {
    // Binomials and their sums stay below 2^53: exact in doubles.
    double c = 1.0, sum = 0.0;
    for (long k = 0; k <= nm1; ++k) {
      if (k >= d) sum += c;
      c = c * (nm1 - k) / (k + 1);
    }
    return sum / std::pow(2.0, (double)nm1);
  }
  const double mean = 0.5 * nm1;
  auto log_binom = [&](long k) {
    return std::lgamma(nm1 + 1.0) - std::lgamma(k + 1.0) - std::lgamma(nm1 - k + 1.0);
  };
  const double ln_half = -kLn2 * nm1;
  if (d > mean) {
    // Direct upper tail; terms decrease from k = d.
    double acc = -std::numeric_limits<double>::infinity();
    const double top = log_binom(d);
    for (long k = d; k <= nm1; ++k) {
      const double t = log_binom(k);
      acc = log_add(acc, t);
      if (t < top - 70.0) break;
    }
    return std::exp(acc + ln_half);
  }
  // Complementary lower tail P(S < d); terms decrease from k = d-1 downward.
  double acc = -std::numeric_limits<double>::infinity();
  const double top = log_binom(d - 1);
  for (long k = d - 1; k >= 0; --k) {
    const double t = log_binom(k);
    acc = log_add(acc, t);
    if (t < top - 70.0) break;
  }
  return 1.0 - std::exp(acc + ln_half);
}

OriginProbability origin_probability(const ModelParams& params) {
  check_params(params);
  const double lambda = std::exp(params.L);
  if (lambda == 0.0) return {0.0, false};
  if (lambda > 1e6) {
    // Chernoff bound on P(N <= 4d) plus the binomial tail at n = 4d.
    const double n0 = 4.0 * params.d;
    double log_eps = -std::numeric_limits<double>::infinity();
    if (n0 < lambda)
      log_eps = -lambda + n0 * (1.0 + std::log(lambda / n0));
    const double kl = 0.25 * std::log(0.25 / 0.5) + 0.75 * std::log(0.75 / 0.5);
    log_eps = log_add(log_eps, (n0 - 1.0) * kl);
    return {1.0 - std::exp(log_eps), true};
  }
  const double sd = std::sqrt(lambda);
  const long lo = std::max(0L, (long)std::floor(lambda - 12.0 * sd));
  const long hi = (long)std::ceil(lambda + 12.0 * sd);
  double acc = 0.0;
  for (long n = lo; n <= hi; ++n) {
    const double w = wendel_origin_probability(params.d, n);
    if (w == 0.0) continue;
    const double log_pmf = n * params.L - lambda - std::lgamma(n + 1.0);
    acc += std::exp(log_pmf) * w;
  }
  return {std::min(acc, 1.0), false};
}

Regime classify_regime(const std::function<double(double)>& log_intensity_of_d, double d0) {
  if (!(d0 >= 2.0)) throw domain_error("classify_regime: d0 must be >= 2");
  std::vector<double> y;
  for (double d = d0; d <= 1.1e12; d *= 2.0) y.push_back(log_intensity_of_d(d) / d);
  const size_t n = y.size();
  if (n < 6) throw domain_error("classify_regime: ladder too short");

  int sign_changes = 0;
  for (size_t k = n - 6; k + 2 < n; ++k) {
    const double d1 = y[k + 1] - y[k];
    const double d2 = y[k + 2] - y[k + 1];
    if (d1 * d2 < -1e-24) ++sign_changes;
  }
  if (sign_changes > 1)
    throw numeric_error("classify_regime: oscillating L(d)/d", y.back());

  const double yK = y[n - 1], yK1 = y[n - 2], yK2 = y[n - 3];
  const double scale = std::max({std::fabs(yK), std::fabs(y[0]), 1e-12});
  const double dK = yK - yK1, dK1 = yK1 - yK2;

  // Stabilized sequence: x = lim L/d reached within tolerance.
  if (std::fabs(dK) <= 1e-5 * scale && std::fabs(dK1) <= 1e-5 * scale) {
    if (yK <= 1e-9 * std::max(1.0, std::fabs(y[0]))) return {RegimeKind::subcritical, 0.0};
    return {RegimeKind::critical, yK};
  }
  if (dK * dK1 > 0.0) {
    const double ratio = dK / dK1;
    if (ratio >= 0.999) {
      // Increments not contracting: drifting ladder.
      if (dK > 0.0) return {RegimeKind::supercritical, 0.0};
      return {RegimeKind::subcritical, 0.0};
    }
    // Geometric extrapolation of the limit.
    const double x_hat = yK + dK * ratio / (1.0 - ratio);
    if (dK > 0.0 && x_hat > 100.0 * scale) return {RegimeKind::supercritical, 0.0};
    if (x_hat <= std::max(1e-8, 0.02 * std::fabs(y[0]))) return {RegimeKind::subcritical, 0.0};
    return {RegimeKind::critical, x_hat};
  }
  throw numeric_error("classify_regime: no convergent trend", yK);
}

GumbelNormalizers1D gumbel_normalizers_1d(const ModelParams& params, const Regime& regime) {
  check_params(params);
  const double d = params.d;
  GumbelNormalizers1D out{};
  out.center = params.L / (d + 1.0);
  switch (regime.kind) {
    case RegimeKind::subcritical:
      if (!(params.L > 0.0)) throw domain_error("gumbel_normalizers_1d: need L > 0");
      out.log_m = std::log(4.0 * M_PI * params.L);
      break;
    case RegimeKind::critical:
      if (!(regime.x > 0.0) || !std::isfinite(regime.x))
        throw domain_error("gumbel_normalizers_1d: critical regime needs finite x > 0");
      out.log_m = std::log(2.0 * M_PI * d * -std::expm1(-2.0 * regime.x));
      break;
    case RegimeKind::supercritical:
      out.log_m = std::log(2.0 * M_PI * d * -std::expm1(-2.0 * params.L / (d + 1.0)));
      break;
  }
  return out;
}

double solve_r_tau(const ModelParams& params, double tau) {
  check_params(params);
  // In w = -ln(1-r^2): F(w) = -(d+1)/2 w - ln r(w), strictly decreasing.
  const double target = 0.5 * (kLog2Pi + std::log((double)params.d)) - params.L - tau;
  auto F = [&](double w) {
    const double log_r = 0.5 * std::log(-std::expm1(-w));
    return -0.5 * (params.d + 1.0) * w - log_r;
  };
  double lo = 1e-300, hi = 1400.0;
  if (F(lo) < target || F(hi) > target)
    throw numeric_error("solve_r_tau: root not bracketed", target);
  for (int it = 0; it < 300; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double f = F(mid) - target;
    if (std::fabs(f) <= 1e-10) return std::sqrt(-std::expm1(-mid));
    if (f > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return std::sqrt(-std::expm1(-0.5 * (lo + hi)));
}

double rayleigh_moment(int k) {
  if (k < 0) throw domain_error("rayleigh_moment: k must be >= 0");
  return std::exp(0.5 * k * kLn2 + std::lgamma(1.0 + 0.5 * k));
}

double janson_alpha_generic(int D, double moment_Dm1, double moment_D) {
  if (D < 1) throw domain_error("janson_alpha_generic: D must be >= 1");
  if (!(moment_Dm1 > 0.0) || !(moment_D > 0.0))
    throw domain_error("janson_alpha_generic: moments must be positive");
  const double ratio = 0.5 * kLogPi + std::lgamma(1.0 + 0.5 * D) - std::lgamma(0.5 * (D + 1));
  return std::exp(-ln_factorial(D) + D * ratio + D * std::log(moment_Dm1) -
                  (D - 1.0) * std::log(moment_D));
}

double janson_b_generic(int D, double moment_D, double manifold_volume) {
  if (D < 1 || !(moment_D > 0.0) || !(manifold_volume > 0.0))
    throw domain_error("janson_b_generic: bad arguments");
  return std::exp(0.5 * D * kLogPi + std::log(moment_D) - std::lgamma(1.0 + 0.5 * D) -
                  std::log(manifold_volume));
}

JansonConstants janson_constants(int m) {
  if (m < 2) throw domain_error("janson_constants: m must be >= 2");
  JansonConstants c{};
  c.m = m;
  const double lg_m2 = std::lgamma(0.5 * m);
  c.alpha = std::exp(0.5 * m * kLogPi - (m - 1.0) * kLn2 - lg_m2);
  c.b = std::exp(0.5 * (m - 3.0) * kLn2 + lg_m2 - 0.5 * kLogPi);
  c.A_m = std::exp(0.5 * kLn2 + 0.5 * (m - 1.0) * kLogPi - std::log(m - 1.0) - lg_m2);
  c.B_m = std::exp(0.5 * (m + 1.0) * kLogPi + (m - 1.0) * std::log((double)(m - 1)) -
                   0.5 * (3.0 * m - 5.0) * kLn2 - 2.0 * lg_m2);
  return c;
}

namespace {

// log of the left side of the scale equation at s = ln(1/a).
double a_equation_log_lhs(const ModelParams& params, int m, double s) {
  const double log_c = 0.5 * kLn2 + 0.5 * (m - 1.0) * kLogPi - std::lgamma(0.5 * m);
  const double log_inv_da2 = 2.0 * s - std::log((double)params.d);
  return log_c + params.L - s - 0.5 * params.d * std::log1p(std::exp(log_inv_da2));
}

// right side (m-1) s + (m-1) ln s + ln B_m + tau; positive where meaningful.
double a_equation_rhs(const JansonConstants& c, int m, double tau, double s) {
  return (m - 1.0) * s + (m - 1.0) * std::log(s) + std::log(c.B_m) + tau;
}

}  // namespace

double a_tau_residual(const ModelParams& params, int m, double tau, double a) {
  const JansonConstants c = janson_constants(m);
  const double s = std::log(1.0 / a);
  return a_equation_log_lhs(params, m, s) - std::log(a_equation_rhs(c, m, tau, s));
}

ATauSolution solve_a_tau(const ModelParams& params, int m, double tau) {
  check_params(params);
  if (m < 2 || m >= params.d) throw domain_error("solve_a_tau: need 2 <= m < d");
  const JansonConstants c = janson_constants(m);

  // Left side decreases in s = ln(1/a), right side increases; bracket where
  // the right side is positive.
  double s_lo = 1e-4;
  while (a_equation_rhs(c, m, tau, s_lo) <= 0.0 && s_lo < 700.0) s_lo *= 2.0;
  double s_hi = 700.0;
  auto F = [&](double s) {
    return a_equation_log_lhs(params, m, s) - std::log(a_equation_rhs(c, m, tau, s));
  };
  if (F(s_lo) < 0.0 || F(s_hi) > 0.0)
    throw numeric_error("solve_a_tau: root not bracketed", s_lo);
  double lo = s_lo, hi = s_hi;
  for (int it = 0; it < 300; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double f = F(mid);
    if (std::fabs(f) <= 1e-11) {
      lo = hi = mid;
      break;
    }
    if (f > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  const double s = 0.5 * (lo + hi);
  ATauSolution sol{};
  sol.a = std::exp(-s);
  const double log_da2 = std::log((double)params.d) - 2.0 * s;
  sol.r = std::exp(-0.5 * std::log1p(std::exp(log_da2)));
  return sol;
}

GumbelNormalizersMD gumbel_normalizers_md(const ModelParams& params, int m) {
  check_params(params);
  if (m < 2) throw domain_error("gumbel_normalizers_md: m must be >= 2");
  if (!(params.L > 0.0)) throw domain_error("gumbel_normalizers_md: need lambda kappa_d > 1");
  const double d = params.d;
  const double two_L_over_d = 2.0 * params.L / d;
  double s;
  if (two_L_over_d > 700.0)
    s = 0.5 * (std::log(d) + two_L_over_d);
  else
    s = 0.5 * std::log(d * std::expm1(two_L_over_d));
  if (!(s > 0.0)) throw domain_error("gumbel_normalizers_md: scale s(d) not positive");
  const JansonConstants c = janson_constants(m);
  GumbelNormalizersMD out{};
  out.m = m;
  out.s_frak = s;
  out.b_frak = (m - 1.0) * d * s;
  out.a_frak = (m - 1.0) * s * (std::log(c.A_m) + params.L - std::log(s)) -
               (m - 1.0) * s * s - (m - 1.0) * std::log(s) - std::log(c.B_m);
  return out;
}

double predict_regime_value(const ModelParams& params, const Regime& regime, int /*m*/) {
  check_params(params);
  switch (regime.kind) {
    case RegimeKind::subcritical:
      if (!(params.L >= 0.0)) throw domain_error("predict_regime_value: need L >= 0");
      return std::sqrt(2.0 * params.L / params.d);
    case RegimeKind::critical:
      return std::sqrt(-std::expm1(-2.0 * regime.x));
    case RegimeKind::supercritical:
      return 1.0 - 0.5 * std::exp(-2.0 * params.L / (params.d + 1.0));
  }
  throw domain_error("predict_regime_value: bad regime");
}

}  // namespace ppl::exactlaw
