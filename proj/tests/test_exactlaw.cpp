#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "ppl/exactlaw.hpp"
#include "ppl/rng.hpp"

using namespace ppl;
using namespace ppl::exactlaw;

namespace {
constexpr double kTwoPi = 6.2831853071795864769;
// Frozen from a 60-digit big-float computation of
// -exp(L - ln k_d + ln k_{d-1} - ln 2 + ln B(1-r^2; (d+1)/2, 1/2)).
constexpr double kLogCdf_d50_L25_r06 = -73832.76260141176051994272;
}  // namespace

TEST_CASE("cap volume") {
  CHECK(log_cap_volume(7, 1.0).is_zero());
  // r = 0 gives the half ball.
  for (int d : {2, 5, 60, 500}) {
    CHECK(log_cap_volume(d, 0.0).value ==
          doctest::Approx(specfun::log_unit_ball_volume(d).value - std::log(2.0)).epsilon(1e-12));
  }
  // d = 3, r = 1/2: closed-form pi * (2/3 - r + r^3/3) = 5 pi / 24.
  CHECK(log_cap_volume(3, 0.5).value ==
        doctest::Approx(std::log(5.0 * M_PI / 24.0)).epsilon(1e-12));
  CHECK_THROWS_AS(log_cap_volume(3, 1.5), domain_error);
}

TEST_CASE("support-function CDF") {
  const ModelParams params{50, 25.0};
  CHECK(log_sf_cdf(params, 1.0).value == 0.0);
  CHECK(log_sf_cdf(params, 0.0).value ==
        doctest::Approx(-std::exp(25.0 - std::log(2.0))).epsilon(1e-12));
  CHECK(log_sf_cdf(params, 0.6).value == doctest::Approx(kLogCdf_d50_L25_r06).epsilon(1e-11));
  // Monotone in r, decreasing in L.
  Rng rng(21);
  for (int i = 0; i < 25; ++i) {
    const double r1 = rng.uniform(), r2 = rng.uniform();
    const double lo = std::min(r1, r2), hi = std::max(r1, r2);
    CHECK(log_sf_cdf(params, lo).value <= log_sf_cdf(params, hi).value + 1e-12);
    const ModelParams hotter{50, 25.0 + 3.0 * rng.uniform()};
    CHECK(log_sf_cdf(hotter, lo).value <= log_sf_cdf(params, lo).value + 1e-12);
  }
}

TEST_CASE("inverse CDF round trips") {
  const ModelParams params{10, std::log(100.0)};
  for (double r0 : {0.15, 0.3, 0.5, 0.75, 0.9}) {
    const double u0 = std::exp(log_sf_cdf(params, r0).value);
    if (u0 <= 0.0 || u0 >= 1.0) continue;
    CHECK(sf_inverse_cdf(params, u0) == doctest::Approx(r0).epsilon(1e-8));
  }
  CHECK(sf_inverse_cdf(params, 1.0 - 1e-12) > 0.999);
  CHECK_THROWS_AS(sf_inverse_cdf(params, 0.0), domain_error);
  CHECK_THROWS_AS(sf_inverse_cdf(params, 1.0), domain_error);
}

TEST_CASE("inverse CDF matches the law empirically") {
  const ModelParams params{10, std::log(100.0)};
  const long n = 20000;
  std::vector<double> samples(n);
  Rng rng(22);
  for (long i = 0; i < n; ++i) samples[i] = sf_inverse_cdf(params, rng.uniform_pos());
  std::sort(samples.begin(), samples.end());
  double ks = 0.0;
  for (long i = 0; i < n; ++i) {
    const double F = std::exp(log_sf_cdf(params, samples[i]).value);
    ks = std::max(ks, std::max(F - (double)i / n, (i + 1.0) / n - F));
  }
  CHECK(ks <= 0.015);
}

TEST_CASE("Wendel probabilities") {
  CHECK(wendel_origin_probability(2, 2) == 0.0);
  CHECK(wendel_origin_probability(2, 3) == 0.25);  // exact arithmetic path
  CHECK(wendel_origin_probability(1, 2) == 0.5);
  CHECK(wendel_origin_probability(3, 100) == doctest::Approx(1.0).epsilon(1e-9));
  // Log-domain path against the exact path around the switch.
  for (long n : {50L, 51L, 52L, 53L, 54L, 60L, 200L, 100000L}) {
    const double v = wendel_origin_probability(5, n);
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }
  // Non-decreasing in n, non-increasing in d.
  for (int d = 1; d <= 6; ++d) {
    double prev = 0.0;
    for (long n = 0; n <= 80; ++n) {
      const double v = wendel_origin_probability(d, n);
      CHECK(v >= prev - 1e-12);
      prev = v;
    }
  }
  for (long n : {10L, 40L, 90L}) {
    double prev = 1.0;
    for (int d = 1; d <= 9; ++d) {
      const double v = wendel_origin_probability(d, n);
      CHECK(v <= prev + 1e-12);
      prev = v;
    }
  }
}

TEST_CASE("origin probability") {
  CHECK(origin_probability({3, -745.0}).value == doctest::Approx(0.0));
  const auto big = origin_probability({10, std::log(2e6)});
  CHECK(big.tail_bound_flag);
  CHECK(big.value > 1.0 - 1e-9);
  // lambda kappa_d = 4 d: approaches 1 along d (monotone trend).
  double prev = 0.0;
  for (int d : {50, 100, 200}) {
    const auto p = origin_probability({d, std::log(4.0 * d)});
    CHECK(p.value > prev);
    prev = p.value;
  }
  CHECK(prev > 0.9);
}

TEST_CASE("regime classification") {
  const auto sub = classify_regime([](double d) { return std::sqrt(d); }, 64.0);
  CHECK(sub.kind == RegimeKind::subcritical);
  const auto crit = classify_regime([](double d) { return 2.0 * d; }, 64.0);
  CHECK(crit.kind == RegimeKind::critical);
  CHECK(crit.x == doctest::Approx(2.0).epsilon(1e-9));
  const auto sup = classify_regime([](double d) { return d * std::log(d) / 4.0; }, 64.0);
  CHECK(sup.kind == RegimeKind::supercritical);
  const auto crit2 = classify_regime([](double d) { return 1.5 * d + 7.0; }, 64.0);
  CHECK(crit2.kind == RegimeKind::critical);
  CHECK(crit2.x == doctest::Approx(1.5).epsilon(1e-6));
}

TEST_CASE("one-directional Gumbel normalizers") {
  const ModelParams params{100, 8.0};
  const auto sub = gumbel_normalizers_1d(params, {RegimeKind::subcritical, 0.0});
  CHECK(sub.log_m == doctest::Approx(std::log(32.0 * M_PI)).epsilon(1e-12));
  CHECK(sub.center == doctest::Approx(8.0 / 101.0).epsilon(1e-12));

  // Supercritical scale equals the critical form evaluated at x = L/(d+1).
  const ModelParams sup_params{100, 1000.0};
  const auto sup = gumbel_normalizers_1d(sup_params, {RegimeKind::supercritical, 0.0});
  CHECK(sup.log_m ==
        doctest::Approx(std::log(2.0 * M_PI * 100 * -std::expm1(-2.0 * 1000.0 / 101.0)))
            .epsilon(1e-12));
  // Critical at large x approaches the supercritical limit form 2 pi d.
  const auto crit = gumbel_normalizers_1d(params, {RegimeKind::critical, 40.0});
  CHECK(crit.log_m == doctest::Approx(std::log(2.0 * M_PI * 100)).epsilon(1e-10));
  CHECK_THROWS_AS(gumbel_normalizers_1d(params, {RegimeKind::critical, 0.0}), domain_error);
}

TEST_CASE("solve_r_tau residual and limits") {
  const ModelParams params{200, 200.0};
  for (double tau : {-2.0, 0.0, 1.5, 6.0}) {
    const double r = solve_r_tau(params, tau);
    const double residual = params.L + 0.5 * (params.d + 1.0) * std::log1p(-r * r) -
                            std::log(r * std::sqrt(kTwoPi * params.d)) + tau;
    CHECK(std::fabs(residual) <= 1e-9);
  }
  CHECK(solve_r_tau(params, 40.0) > solve_r_tau(params, 0.0));
  CHECK(solve_r_tau(params, 200.0) > 0.999);
}

TEST_CASE("solve_r_tau: CDF at the root approaches the Gumbel value") {
  double prev_err = 1e9;
  for (int d : {100, 400, 1600}) {
    const ModelParams params{d, (double)d};
    const double r = solve_r_tau(params, 0.7);
    const double err = std::fabs(log_sf_cdf(params, r).value + std::exp(-0.7));
    CHECK(err < prev_err);
    prev_err = err;
  }
  CHECK(prev_err < 5e-3);
}

TEST_CASE("Janson constants at m = 2 and consistency identities") {
  const auto c = janson_constants(2);
  CHECK(c.alpha == doctest::Approx(M_PI / 2.0).epsilon(1e-14));
  CHECK(c.b == doctest::Approx(1.0 / std::sqrt(kTwoPi)).epsilon(1e-14));
  CHECK(c.A_m == doctest::Approx(std::sqrt(kTwoPi)).epsilon(1e-14));
  CHECK(c.B_m == doctest::Approx(std::pow(M_PI, 1.5) / std::sqrt(2.0)).epsilon(1e-14));

  for (int m = 2; m <= 50; ++m) {
    const auto k = janson_constants(m);
    // Duplication-formula cross-check between the two closed forms of alpha.
    const double alt = std::exp(0.5 * (m - 1.0) * std::log(M_PI) +
                                std::lgamma(0.5 * (m + 1.0)) - std::lgamma((double)m));
    CHECK(k.alpha == doctest::Approx(alt).epsilon(1e-12));
    // Defining relation of B_m.
    CHECK(k.B_m ==
          doctest::Approx(k.alpha * std::pow((double)(m - 1), m - 1) / k.b).epsilon(1e-12));
    // The generic entry point evaluated at Rayleigh moments reproduces alpha.
    const double gen = janson_alpha_generic(m - 1, rayleigh_moment(m - 2), rayleigh_moment(m - 1));
    CHECK(gen == doctest::Approx(k.alpha).epsilon(1e-12));
    const double vol = m * std::exp(ppl::specfun::log_unit_ball_volume(m).value);
    CHECK(janson_b_generic(m - 1, rayleigh_moment(m - 1), vol) ==
          doctest::Approx(k.b).epsilon(1e-12));
  }
}

TEST_CASE("Rayleigh moments") {
  CHECK(rayleigh_moment(0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(rayleigh_moment(1) == doctest::Approx(std::sqrt(M_PI / 2.0)).epsilon(1e-14));
  CHECK(rayleigh_moment(2) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("solve_a_tau residual, monotonicity, and scale asymptotics") {
  const ModelParams params{10000, 10000.0};
  for (double tau : {-1.0, 0.0, 1.0}) {
    const auto sol = solve_a_tau(params, 2, tau);
    CHECK(std::fabs(a_tau_residual(params, 2, tau, sol.a)) <= 1e-9);
    CHECK(sol.r == doctest::Approx(1.0 / std::sqrt(1.0 + params.d * sol.a * sol.a)).epsilon(1e-12));
  }
  // a(tau) grows with tau: a larger right side needs a larger scale.
  double prev = 0.0;
  for (double tau : {-2.0, -1.0, 0.0, 1.0, 2.0}) {
    const double a = solve_a_tau(params, 2, tau).a;
    CHECK(a > prev);
    prev = a;
  }
  // Critical-regime scale: 1/a ~ sqrt(d (e^{2x} - 1)) within 5% at d = 1e4.
  const double inv_a = 1.0 / solve_a_tau(params, 2, 0.0).a;
  CHECK(inv_a == doctest::Approx(std::sqrt(params.d * std::expm1(2.0))).epsilon(0.05));
  // Subcritical: 1/a ~ sqrt(2 L) within 10% at d = 1e6 (pure arithmetic).
  const double ln_d = std::log(1e6);
  const ModelParams sub{1000000, ln_d * ln_d};
  CHECK(1.0 / solve_a_tau(sub, 2, 0.0).a ==
        doctest::Approx(std::sqrt(2.0 * sub.L)).epsilon(0.10));
}

TEST_CASE("multi-directional normalizers") {
  const ModelParams params{10000, 10000.0};
  const auto norm = gumbel_normalizers_md(params, 2);
  CHECK(norm.b_frak > 0.0);
  CHECK(norm.s_frak ==
        doctest::Approx(0.5 * std::log(params.d * std::expm1(2.0))).epsilon(1e-12));
  CHECK_THROWS_AS(gumbel_normalizers_md({100, -1.0}, 2), domain_error);

  // Statistic evaluated at the tau-root converges to tau along a d-ladder.
  for (double tau : {0.0, 1.0}) {
    double prev_err = 1e9;
    for (int d : {1000, 10000, 100000}) {
      const ModelParams p{d, (double)d};
      const auto sol = solve_a_tau(p, 2, tau);
      const auto n = gumbel_normalizers_md(p, 2);
      const double stat = n.a_frak - n.b_frak * (-0.5 * std::log1p(-sol.r * sol.r));
      const double err = std::fabs(stat - tau);
      CHECK(err < prev_err);
      prev_err = err;
    }
    CHECK(prev_err < 1.0);
  }

  // exp(2 a/b) tracks (lambda kappa_d)^{2/d}: relative error shrinks with d.
  double prev_rel = 1e9;
  for (int d : {1000, 10000, 100000}) {
    const ModelParams p{d, (double)d};
    const auto n = gumbel_normalizers_md(p, 2);
    const double rel = std::fabs(std::exp(2.0 * n.a_frak / n.b_frak - 2.0 * p.L / d) - 1.0);
    CHECK(rel < prev_rel);
    prev_rel = rel;
  }
  CHECK(prev_rel < 0.01);
}

TEST_CASE("regime location predictions") {
  CHECK(predict_regime_value({100, 50.0}, {RegimeKind::critical, std::log(2.0)}) ==
        doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-12));
  CHECK(predict_regime_value({10000, 100.0}, {RegimeKind::subcritical, 0.0}) ==
        doctest::Approx(std::sqrt(0.02)).epsilon(1e-12));
  const ModelParams sup{1000, 10000.0};
  CHECK(predict_regime_value(sup, {RegimeKind::supercritical, 0.0}) ==
        doctest::Approx(1.0 - 0.5 * std::exp(-20000.0 / 1001.0)).epsilon(1e-12));
}

TEST_CASE("hypothesis surrogate flag") {
  CHECK(ModelParams{100, std::log(210.0)}.hypothesis_ok());
  CHECK_FALSE(ModelParams{100, std::log(200.0)}.hypothesis_ok());
  CHECK(ModelParams{100, 5.0}.weak_intensity_warning());
  CHECK_FALSE(ModelParams{100, 50.0}.weak_intensity_warning());
}
