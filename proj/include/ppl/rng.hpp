#pragma once

// Deterministic RNG with counter-derived replication streams: stream k of a
// master seed is a pure function of (seed, k), so replications can run in any
// order (or concurrently) and still aggregate to identical results.

#include <cmath>
#include <cstdint>

#include "ppl/errors.hpp"

namespace ppl {

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}
}  // namespace detail

/// xoshiro256++ with explicit, portable sampling transforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& w : state_) w = detail::splitmix64(sm);
  }

  /// Stream `index` of `master`: independent of all other indices.
  static Rng stream(std::uint64_t master, std::uint64_t index) {
    std::uint64_t sm = master;
    const std::uint64_t a = detail::splitmix64(sm);
    sm = index + 0x243F6A8885A308D3ULL;
    const std::uint64_t b = detail::splitmix64(sm);
    return Rng(a ^ (b * 0xD1B54A32D192ED03ULL));
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform on (0, 1); never returns 0.
  double uniform_pos() {
    double u;
    do {
      u = uniform();
    } while (u == 0.0);
    return u;
  }

  /// Standard normal via Marsaglia polar method.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    have_spare_ = true;
    return u * f;
  }

  double exponential() { return -std::log(uniform_pos()); }

  /// Poisson(mean); inversion for small means, PTRS rejection otherwise.
  long poisson(double mean) {
    if (mean < 0.0 || !std::isfinite(mean)) throw domain_error("poisson: bad mean");
    if (mean == 0.0) return 0;
    if (mean < 30.0) {
      const double limit = std::exp(-mean);
      long k = 0;
      double prod = uniform_pos();
      while (prod > limit) {
        prod *= uniform_pos();
        ++k;
      }
      return k;
    }
    return poisson_ptrs(mean);
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  // Hoermann's transformed rejection with squeeze (PTRS).
  long poisson_ptrs(double mean) {
    const double slam = std::sqrt(mean);
    const double loglam = std::log(mean);
    const double b = 0.931 + 2.53 * slam;
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double vr = 0.9277 - 3.6224 / (b - 2.0);
    for (;;) {
      const double u = uniform() - 0.5;
      const double v = uniform_pos();
      const double us = 0.5 - std::fabs(u);
      const double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
      if (us >= 0.07 && v <= vr) return static_cast<long>(kf);
      if (kf < 0.0 || (us < 0.013 && v > us)) continue;
      if (std::log(v * inv_alpha / (a / (us * us) + b)) <=
          kf * loglam - mean - std::lgamma(kf + 1.0))
        return static_cast<long>(kf);
    }
  }

  std::uint64_t state_[4];
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace ppl
