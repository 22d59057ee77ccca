#include "meso/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace meso {

MomentSummary moments(const std::vector<double>& xs) {
  MomentSummary s;
  s.count = xs.size();
  if (xs.empty()) return s;
  double mean = 0.0;
  for (const double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (const double x : xs) {
    const double d = x - mean;
    m2 += d * d;
    m3 += d * d * d;
    m4 += d * d * d * d;
  }
  const double n = static_cast<double>(xs.size());
  s.mean = mean;
  s.variance = xs.size() > 1 ? m2 / (n - 1.0) : 0.0;
  m2 /= n;
  m3 /= n;
  m4 /= n;
  if (m2 > 0.0) {
    s.skewness = m3 / std::pow(m2, 1.5);
    s.excess_kurtosis = m4 / (m2 * m2) - 3.0;
  }
  return s;
}

double skewness_null_se(std::size_t m) {
  return std::sqrt(6.0 / static_cast<double>(m));
}

double kurtosis_null_se(std::size_t m) {
  return std::sqrt(24.0 / static_cast<double>(m));
}

double jackknife_se(std::size_t m_total,
                    const std::function<double(std::size_t)>& stat_without) {
  if (m_total < 3) return std::numeric_limits<double>::infinity();
  std::vector<double> theta(m_total);
  double mean = 0.0;
  for (std::size_t m = 0; m < m_total; ++m) {
    theta[m] = stat_without(m);
    mean += theta[m];
  }
  mean /= static_cast<double>(m_total);
  double ss = 0.0;
  for (const double t : theta) ss += (t - mean) * (t - mean);
  const double n = static_cast<double>(m_total);
  return std::sqrt((n - 1.0) / n * ss);
}

double ks_statistic(const std::vector<double>& sorted_xs,
                    const std::function<double(double)>& cdf) {
  if (sorted_xs.empty()) throw std::invalid_argument("ks_statistic: no data");
  if (!std::is_sorted(sorted_xs.begin(), sorted_xs.end()))
    throw std::invalid_argument("ks_statistic: data must be sorted");
  const double n = static_cast<double>(sorted_xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted_xs.size(); ++i) {
    const double f = cdf(sorted_xs[i]);
    d = std::max(d, f - static_cast<double>(i) / n);
    d = std::max(d, static_cast<double>(i + 1) / n - f);
  }
  return d;
}

double kolmogorov_pvalue(double x) {
  if (x <= 0.02) return 1.0;
  double sum = 0.0;
  for (int j = 1; j <= 200; ++j) {
    const double term = std::exp(-2.0 * j * j * x * x);
    sum += (j % 2 == 1 ? term : -term);
    if (term < 1e-18) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

double standard_normal_cdf(double x) {
  return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

}  // namespace meso
