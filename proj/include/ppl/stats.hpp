#pragma once

// Validation statistics: empirical CDF distances and the normalized Gumbel
// statistics for the one- and multi-directional limits.

#include <functional>
#include <vector>

#include "ppl/exactlaw.hpp"

namespace ppl::stats {

/// Two-sided Kolmogorov-Smirnov distance between the empirical CDF of the
/// samples and a reference CDF.
double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf);

/// CDF of the standard Gumbel distribution: exp(-exp(-t)).
double gumbel_cdf(double t);

/// Sample median (average of middle order statistics for even sizes).
double median(std::vector<double> samples);

/// d (ln 1/sqrt(1-r^2) - L/(d+1)) + ln sqrt(m(d)): the normalized
/// one-directional statistic; Gumbel in the limit.
double gumbel_statistic_1d(const exactlaw::ModelParams& params, const exactlaw::Regime& regime,
                           double r_sample);

/// a(d;m) - b(d;m) ln 1/sqrt(1-h^2): the normalized multi-directional
/// statistic; Gumbel in the limit.
double gumbel_statistic_md(const exactlaw::ModelParams& params, int m, double sf_dm_sample);

}  // namespace ppl::stats
