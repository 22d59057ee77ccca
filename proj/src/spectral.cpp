#include "meso/spectral.hpp"

#include <cmath>
#include <stdexcept>

namespace meso {

namespace {

constexpr std::size_t kCompensatedThreshold = 10000;

// Kahan-compensated complex accumulator for the large-n spectral sums.
struct CompensatedSum {
  std::complex<double> sum{0.0, 0.0};
  std::complex<double> carry{0.0, 0.0};

  void add(std::complex<double> x) {
    const std::complex<double> y = x - carry;
    const std::complex<double> t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

}  // namespace

MesoFrame MesoFrame::make(double energy, double gamma, int n) {
  if (!(energy > -2.0 && energy < 2.0))
    throw std::invalid_argument("MesoFrame: energy must lie in (-2, 2)");
  if (!(gamma > 0.0 && gamma < 1.0))
    throw std::invalid_argument("MesoFrame: gamma must lie in (0, 1)");
  MesoFrame f;
  f.energy = energy;
  f.gamma = gamma;
  f.n = n;
  f.d_n = std::pow(static_cast<double>(n), gamma);
  if (!(f.d_n > 1.0 && f.d_n < n))
    throw std::invalid_argument("MesoFrame: need 1 < d_N < n");
  return f;
}

MesoFrame MesoFrame::with_scale(double energy, double d_n, int n) {
  if (!(energy > -2.0 && energy < 2.0))
    throw std::invalid_argument("MesoFrame: energy must lie in (-2, 2)");
  if (!(d_n > 1.0 && d_n <= static_cast<double>(n)))
    throw std::invalid_argument("MesoFrame: need 1 < d_N <= n");
  MesoFrame f;
  f.energy = energy;
  f.d_n = d_n;
  f.n = n;
  f.gamma = std::log(d_n) / std::log(static_cast<double>(n));
  return f;
}

double semicircle_density(double x) {
  if (std::abs(x) >= 2.0) return 0.0;
  return std::sqrt(4.0 - x * x) / (2.0 * M_PI);
}

double semicircle_cdf(double x) {
  if (x <= -2.0) return 0.0;
  if (x >= 2.0) return 1.0;
  return 0.5 + (x * std::sqrt(4.0 - x * x) + 4.0 * std::asin(0.5 * x)) /
                   (4.0 * M_PI);
}

std::complex<double> semicircle_stieltjes(std::complex<double> z) {
  if (!(z.imag() > 0.0))
    throw std::invalid_argument("semicircle_stieltjes: Im z must be > 0");
  const std::complex<double> root = std::sqrt(z * z - 4.0);
  // the two quadratic roots multiply to 1; exactly one lies in the upper
  // half-plane
  const std::complex<double> s1 = 0.5 * (-z + root);
  return s1.imag() > 0.0 ? s1 : 0.5 * (-z - root);
}

std::complex<double> empirical_stieltjes(const Spectrum& s,
                                         std::complex<double> z) {
  if (z.imag() == 0.0)
    throw std::invalid_argument("empirical_stieltjes: z must not be real");
  const std::size_t n = s.eigenvalues.size();
  if (n >= kCompensatedThreshold) {
    CompensatedSum acc;
    for (const double lam : s.eigenvalues) acc.add(1.0 / (lam - z));
    return acc.sum / static_cast<double>(n);
  }
  std::complex<double> acc{0.0, 0.0};
  for (const double lam : s.eigenvalues) acc += 1.0 / (lam - z);
  return acc / static_cast<double>(n);
}

std::complex<double> resolvent_trace(const Spectrum& s, const MesoFrame& frame,
                                     MesoPoint p) {
  if (!(p.eta > 0.0))
    throw std::invalid_argument("resolvent_trace: eta must be > 0");
  const std::complex<double> shift(frame.energy + p.tau / frame.d_n,
                                   p.eta / frame.d_n);
  const std::size_t n = s.eigenvalues.size();
  if (n >= kCompensatedThreshold) {
    CompensatedSum acc;
    for (const double lam : s.eigenvalues) acc.add(1.0 / (lam - shift));
    return acc.sum;
  }
  std::complex<double> acc{0.0, 0.0};
  for (const double lam : s.eigenvalues) acc += 1.0 / (lam - shift);
  return acc;
}

std::vector<std::complex<double>> centered_v(
    const std::vector<std::complex<double>>& traces, double d_n) {
  if (traces.size() < 2)
    throw std::invalid_argument("centered_v: need at least 2 samples");
  std::complex<double> mean{0.0, 0.0};
  for (const auto& t : traces) mean += t;
  mean /= static_cast<double>(traces.size());
  std::vector<std::complex<double>> out(traces.size());
  for (std::size_t m = 0; m < traces.size(); ++m)
    out[m] = (traces[m] - mean) / d_n;
  return out;
}

double linear_statistic(const Spectrum& s, const MesoFrame& frame,
                        const TestFunction& f) {
  const std::size_t n = s.eigenvalues.size();
  if (n >= kCompensatedThreshold) {
    double sum = 0.0, carry = 0.0;
    for (const double lam : s.eigenvalues) {
      const double x = f.f(frame.d_n * (frame.energy - lam)) - carry;
      const double t = sum + x;
      carry = (t - sum) - x;
      sum = t;
    }
    return sum;
  }
  double sum = 0.0;
  for (const double lam : s.eigenvalues)
    sum += f.f(frame.d_n * (frame.energy - lam));
  return sum;
}

double log_char_process(const Spectrum& s, const MesoFrame& frame, double tau,
                        double eta) {
  if (!(eta > 0.0))
    throw std::invalid_argument("log_char_process: eta must be > 0");
  const double y = eta / frame.d_n;
  double sum = 0.0;
  for (const double lam : s.eigenvalues) {
    const double x0 = lam - frame.energy;
    const double xt = x0 - tau / frame.d_n;
    sum += 0.5 * (std::log(xt * xt + y * y) - std::log(x0 * x0 + y * y));
  }
  return sum;
}

}  // namespace meso
