#include "ppl/covering.hpp"

#include <algorithm>
#include <cmath>

#include "ppl/polysim.hpp"
#include "ppl/rng.hpp"

namespace ppl::covering {

using specfun::log_lower_incomplete_beta;

namespace {

constexpr double kTwoPi = 6.2831853071795864769;

double rayleigh_tail(double rho) { return std::exp(-0.5 * rho * rho); }

}  // namespace

double CoveringInstance::radius_tail(double rho) const {
  if (rho <= 0.0) return 1.0;
  if (rho >= rho_max) return 0.0;
  const double c = std::cos(a * rho);
  const double x = 1.0 - (r / c) * (r / c);
  if (x <= 0.0) return 0.0;
  return std::exp(log_lower_incomplete_beta({x, p, q}).value - log_beta_x0);
}

CoveringInstance build_instance(const ModelParams& params, int m, double r) {
  if (!(r > 0.0 && r < 1.0)) throw domain_error("build_instance: need 0 < r < 1");
  if (m < 2 || m >= params.d) throw domain_error("build_instance: need 2 <= m < d");
  CoveringInstance inst;
  inst.d = params.d;
  inst.m = m;
  inst.r = r;
  inst.a = std::sqrt((1.0 - r) * (1.0 + r)) / (r * std::sqrt((double)params.d));
  inst.p = 1.0 + 0.5 * (params.d - m);
  inst.q = 0.5 * m;
  const double x0 = (1.0 - r) * (1.0 + r);
  inst.log_beta_x0 = log_lower_incomplete_beta({x0, inst.p, inst.q}).value;
  inst.log_lambda = LogValue(params.L + inst.log_beta_x0 -
                             specfun::log_complete_beta(inst.p, inst.q).value);
  inst.rho_max = std::acos(r) / inst.a;
  return inst;
}

double sample_radius(const CoveringInstance& inst, double u) {
  if (!(u > 0.0 && u < 1.0)) throw domain_error("sample_radius: u outside (0,1)");
  if (inst.m == 2) {
    // q = 1 collapses the tail to a pure power: invert it directly.
    const double x0 = (1.0 - inst.r) * (1.0 + inst.r);
    const double x = x0 * std::exp(std::log1p(-u) / inst.p);
    const double c = inst.r / std::sqrt(1.0 - x);
    return std::acos(std::min(1.0, c)) / inst.a;
  }
  const double target = 1.0 - u;
  double lo = 0.0, hi = inst.rho_max;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double t = inst.radius_tail(mid);
    if (std::fabs(t - target) <= 1e-10) return mid;
    if (t > target)
      lo = mid;
    else
      hi = mid;
  }
  if (hi - lo > 1e-9 * inst.rho_max)
    throw numeric_error("sample_radius: bisection failed", 0.5 * (lo + hi));
  return 0.5 * (lo + hi);
}

ArcSet sample_covering_m2(const CoveringInstance& inst, std::uint64_t seed) {
  if (inst.m != 2) throw domain_error("sample_covering_m2: instance must have m = 2");
  const double mean = std::exp(std::log(kTwoPi) + inst.log_lambda.value);
  if (!(mean <= 1e7)) throw resource_error("sample_covering_m2: expected arc count above 1e7");
  Rng rng(seed);
  const long n = rng.poisson(mean);
  ArcSet set;
  set.arcs.resize(n);
  for (long i = 0; i < n; ++i) {
    set.arcs[i].center = kTwoPi * rng.uniform();
    set.arcs[i].half_width = inst.a * sample_radius(inst, rng.uniform_pos());
  }
  return set;
}

namespace {

// Sweep events: +1 at arc starts, -1 at arc ends; starts sort before ends at
// equal angles so that abutting closed arcs leave no gap.
struct SweepResult {
  double uncovered;
  bool covered;
};

SweepResult sweep(const ArcSet& set) {
  if (set.arcs.empty()) return {kTwoPi, false};
  std::vector<std::pair<double, int>> events;
  events.reserve(2 * set.arcs.size() + 2);
  for (const Arc& arc : set.arcs) {
    if (!(arc.half_width > 0.0)) continue;
    if (arc.half_width >= M_PI) return {0.0, true};
    double lo = std::fmod(arc.center - arc.half_width, kTwoPi);
    if (lo < 0.0) lo += kTwoPi;
    const double hi = lo + 2.0 * arc.half_width;
    if (hi >= kTwoPi) {
      events.emplace_back(lo, +1);
      events.emplace_back(kTwoPi, -1);
      events.emplace_back(0.0, +1);
      events.emplace_back(hi - kTwoPi, -1);
    } else {
      events.emplace_back(lo, +1);
      events.emplace_back(hi, -1);
    }
  }
  if (events.empty()) return {kTwoPi, false};
  std::sort(events.begin(), events.end(),
            [](const std::pair<double, int>& a, const std::pair<double, int>& b) {
              if (a.first != b.first) return a.first < b.first;
              return a.second > b.second;  // starts before ends
            });
  double uncovered = 0.0;
  int active = 0;
  double prev = 0.0;
  for (const auto& [angle, delta] : events) {
    if (active == 0 && angle > prev) uncovered += angle - prev;
    active += delta;
    prev = angle;
  }
  if (prev < kTwoPi) uncovered += kTwoPi - prev;
  return {uncovered, uncovered <= 0.0};
}

}  // namespace

bool is_circle_covered(const ArcSet& arcs) { return sweep(arcs).covered; }

double uncovered_measure(const ArcSet& arcs) { return sweep(arcs).uncovered; }

double stevens_covering_probability(int n, double arc_fraction) {
  if (n < 1) throw domain_error("stevens_covering_probability: n must be >= 1");
  if (arc_fraction >= 1.0) return 1.0;
  if (arc_fraction <= 0.0) return 0.0;
  // Alternating sum with Neumaier compensation.
  double sum = 0.0, comp = 0.0;
  double binom = 1.0;  // C(n, k)
  for (int k = 0; k <= n; ++k) {
    const double base = 1.0 - k * arc_fraction;
    if (base <= 0.0) break;
    const double term = (k % 2 == 0 ? 1.0 : -1.0) * binom * std::pow(base, n - 1);
    const double t = sum + term;
    if (std::fabs(sum) >= std::fabs(term))
      comp += (sum - t) + term;
    else
      comp += (term - t) + sum;
    sum = t;
    binom = binom * (n - k) / (k + 1.0);
  }
  return std::min(1.0, std::max(0.0, sum + comp));
}

namespace {

// m = 3: quasi-uniform Fibonacci grid on S^2, flagged approximate.
bool sphere_covered_grid(const CoveringInstance& inst, Rng& rng, int grid_size) {
  const double mean = std::exp(std::log(4.0 * M_PI) + inst.log_lambda.value);
  if (!(mean <= 2e4)) throw resource_error("covering m=3: expected cap count above cap");
  const long n = rng.poisson(mean);
  std::vector<Eigen::Vector3d> centers(n);
  std::vector<double> cos_radius(n);
  for (long i = 0; i < n; ++i) {
    Eigen::Vector3d g;
    double norm2;
    do {
      g = {rng.normal(), rng.normal(), rng.normal()};
      norm2 = g.squaredNorm();
    } while (norm2 == 0.0);
    centers[i] = g / std::sqrt(norm2);
    cos_radius[i] = std::cos(inst.a * sample_radius(inst, rng.uniform_pos()));
  }
  const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
  for (int k = 0; k < grid_size; ++k) {
    const double z = 1.0 - (2.0 * k + 1.0) / grid_size;
    const double phi = kTwoPi * std::fmod(k / golden, 1.0);
    const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
    const Eigen::Vector3d pt(s * std::cos(phi), s * std::sin(phi), z);
    bool hit = false;
    for (long i = 0; i < n && !hit; ++i) hit = centers[i].dot(pt) >= cos_radius[i];
    if (!hit) return false;
  }
  return true;
}

}  // namespace

CoverEstimate estimate_covering_probability(const CoveringInstance& inst, long n_reps,
                                            std::uint64_t seed) {
  if (n_reps < 1) throw domain_error("estimate_covering_probability: n_reps must be >= 1");
  if (inst.m != 2 && inst.m != 3)
    throw domain_error("estimate_covering_probability: only m = 2 (exact) and m = 3 (grid)");
  long covered = 0;
  for (long rep = 0; rep < n_reps; ++rep) {
    Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(rep));
    if (inst.m == 2) {
      covered += is_circle_covered(sample_covering_m2(inst, rng.next_u64())) ? 1 : 0;
    } else {
      covered += sphere_covered_grid(inst, rng, 100000) ? 1 : 0;
    }
  }
  CoverEstimate out{};
  out.n_reps = n_reps;
  out.p = static_cast<double>(covered) / n_reps;
  out.std_error = std::sqrt(std::max(0.0, out.p * (1.0 - out.p)) / n_reps);
  out.approximate = (inst.m == 3);
  return out;
}

double janson_functional(LogValue log_lambda, int m, double a,
                         std::pair<double, double> moments) {
  if (m < 2) throw domain_error("janson_functional: m must be >= 2");
  if (!(a > 0.0)) throw domain_error("janson_functional: a must be positive");
  const int D = m - 1;
  const double v = m * std::exp(specfun::log_unit_ball_volume(m).value);
  const double b = exactlaw::janson_b_generic(D, moments.second, v);
  const double alpha = exactlaw::janson_alpha_generic(D, moments.first, moments.second);
  const double log_bad = std::log(b) + D * std::log(a);
  if (!(log_bad < 0.0)) throw domain_error("janson_functional: need b a^D < 1");
  const double l1 = -log_bad;  // ln(1/(b a^D))
  if (!(l1 > 1.0)) throw domain_error("janson_functional: log log argument <= 1");
  const double log_first = log_bad + std::log(v) + log_lambda.value;
  if (log_first > 690.0) throw numeric_error("janson_functional: leading term overflows", log_first);
  return std::exp(log_first) - l1 - D * std::log(l1) - std::log(alpha);
}

namespace detail {

AppendixReport verify_tails(const std::function<double(double)>& tail, double rho_max, double a,
                            double w, double d_r_squared) {
  AppendixReport rep{};
  const double log_inv_a = std::log(1.0 / a);
  if (!(log_inv_a > 0.0)) throw domain_error("verify_tails: need a < 1");
  const double inflate = 1.0 + w / log_inv_a;

  // (i) sup of tail(rho) / P(inflate * R > rho) over a log-spaced grid.
  const int grid_n = 10000;
  double sup = 0.0;
  const double lo = rho_max * 1e-8;
  const double step = std::log(rho_max / lo) / (grid_n - 1);
  for (int i = 0; i < grid_n; ++i) {
    const double rho = lo * std::exp(i * step);
    const double denom = rayleigh_tail(rho / inflate);
    if (denom <= 0.0) continue;
    sup = std::max(sup, tail(rho) / denom);
  }
  rep.sup_tail_ratio = sup;
  rep.ratio_ok = sup <= 1.0 + 1e-9;

  // (ii) W1 of the log radius laws: integral of |tail difference| d rho/rho.
  const double hi = std::max(rho_max, 7.5);
  const double lo_w1 = 1e-8;
  std::function<double(double)> f = [&](double rho) {
    return std::fabs(tail(rho) - rayleigh_tail(rho)) / rho;
  };
  // Adaptive Simpson with a modest floor on the recursion scale.
  std::function<double(double, double, double, double, double, double, int)> simpson =
      [&](double a0, double b0, double fa, double fm, double fb, double whole, int depth) {
        const double m0 = 0.5 * (a0 + b0);
        const double lm = 0.5 * (a0 + m0), rm = 0.5 * (m0 + b0);
        const double flm = f(lm), frm = f(rm);
        const double left = (m0 - a0) / 6.0 * (fa + 4.0 * flm + fm);
        const double right = (b0 - m0) / 6.0 * (fm + 4.0 * frm + fb);
        if (depth <= 0 || std::fabs(left + right - whole) < 1e-13 * (1.0 + std::fabs(whole)))
          return left + right + (left + right - whole) / 15.0;
        return simpson(a0, m0, fa, flm, fm, left, depth - 1) +
               simpson(m0, b0, fm, frm, fb, right, depth - 1);
      };
  double w1 = 0.0;
  // Split at rho_max where the instance tail hits zero and is non-smooth.
  std::vector<double> knots = {lo_w1, 0.1, 1.0, rho_max, hi};
  for (double& k : knots) k = std::min(std::max(k, lo_w1), hi);
  std::sort(knots.begin(), knots.end());
  for (size_t seg = 0; seg + 1 < knots.size(); ++seg) {
    const double a0 = knots[seg], b0 = knots[seg + 1];
    if (!(b0 > a0)) continue;
    const double fa = f(a0), fb = f(b0), fm = f(0.5 * (a0 + b0));
    const double whole = (b0 - a0) / 6.0 * (fa + 4.0 * fm + fb);
    w1 += simpson(a0, b0, fa, fm, fb, whole, 40);
  }
  // Analytic remainder beyond hi: both tails below the Rayleigh tail there.
  w1 += rayleigh_tail(hi) / (hi * hi);
  rep.w1 = w1;
  rep.bound_shape = std::pow(std::log(d_r_squared), 2) / d_r_squared;
  rep.w1_over_bound = w1 / rep.bound_shape;
  rep.decay2_value = 0.0;  // filled by the caller that knows (a, d)
  return rep;
}

}  // namespace detail

AppendixReport verify_appendix_hypotheses(const ModelParams& params, int m, double r, double w) {
  const CoveringInstance inst = build_instance(params, m, r);
  const double d_r_squared = params.d * r * r;
  AppendixReport rep = detail::verify_tails([&](double rho) { return inst.radius_tail(rho); },
                                            inst.rho_max, inst.a, w, d_r_squared);
  rep.decay2_value = inst.a + std::pow(std::log(1.0 / inst.a), 2.25) / params.d;
  return rep;
}

}  // namespace ppl::covering
