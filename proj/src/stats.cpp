#include "ppl/stats.hpp"

#include <algorithm>
#include <cmath>

#include "ppl/errors.hpp"

namespace ppl::stats {

double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw domain_error("ks_distance: empty sample");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double dist = 0.0;
  for (size_t i = 0; i < samples.size(); ++i) {
    const double F = cdf(samples[i]);
    dist = std::max(dist, std::max(F - i / n, (i + 1) / n - F));
  }
  return dist;
}

double gumbel_cdf(double t) { return std::exp(-std::exp(-t)); }

double median(std::vector<double> samples) {
  if (samples.empty()) throw domain_error("median: empty sample");
  std::sort(samples.begin(), samples.end());
  const size_t n = samples.size();
  if (n % 2 == 1) return samples[n / 2];
  return 0.5 * (samples[n / 2 - 1] + samples[n / 2]);
}

double gumbel_statistic_1d(const exactlaw::ModelParams& params, const exactlaw::Regime& regime,
                           double r_sample) {
  if (!(r_sample > 0.0 && r_sample < 1.0))
    throw domain_error("gumbel_statistic_1d: sample outside (0,1)");
  const auto norm = exactlaw::gumbel_normalizers_1d(params, regime);
  const double log_inv = -0.5 * std::log1p(-r_sample * r_sample);
  return params.d * (log_inv - norm.center) + 0.5 * norm.log_m;
}

double gumbel_statistic_md(const exactlaw::ModelParams& params, int m, double sf_dm_sample) {
  if (!(sf_dm_sample > 0.0 && sf_dm_sample < 1.0))
    throw domain_error("gumbel_statistic_md: sample outside (0,1)");
  const auto norm = exactlaw::gumbel_normalizers_md(params, m);
  const double log_inv = -0.5 * std::log1p(-sf_dm_sample * sf_dm_sample);
  return norm.a_frak - norm.b_frak * log_inv;
}

}  // namespace ppl::stats
