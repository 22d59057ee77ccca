#pragma once

#include <functional>
#include <vector>

namespace meso {

struct MomentSummary {
  std::size_t count = 0;
  double mean = 0.0;
  double variance = 0.0;        // unbiased
  double skewness = 0.0;        // standardized third central moment
  double excess_kurtosis = 0.0;  // standardized fourth central moment - 3
};

MomentSummary moments(const std::vector<double>& xs);

// Null standard errors of the moment statistics for M Gaussian samples.
double skewness_null_se(std::size_t m);
double kurtosis_null_se(std::size_t m);

// Leave-one-out jackknife. `stat_without(m)` evaluates the statistic on
// the sample with index m removed.
double jackknife_se(std::size_t m_total,
                    const std::function<double(std::size_t)>& stat_without);

// sup-distance between the empirical CDF of sorted data and `cdf`
double ks_statistic(const std::vector<double>& sorted_xs,
                    const std::function<double(double)>& cdf);

// P(sqrt(M) D > x) under the Kolmogorov null, by the alternating series.
double kolmogorov_pvalue(double x);

double standard_normal_cdf(double x);

}  // namespace meso
