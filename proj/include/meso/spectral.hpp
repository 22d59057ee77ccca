#pragma once

#include <complex>
#include <vector>

#include "meso/ensembles.hpp"
#include "meso/test_function.hpp"

namespace meso {

// Observation window: statistics are evaluated at E + (tau + i eta) / d_N.
// Scales with gamma < 1/3 are inside the proven regime; larger gamma (up
// to the microscopic d_N = n) is permitted but tagged in reports.
struct MesoFrame {
  double energy = 0.0;
  double gamma = 0.25;
  double d_n = 1.0;
  int n = 1;

  static MesoFrame make(double energy, double gamma, int n);
  // explicit d_N override (gamma is derived as log d_N / log n)
  static MesoFrame with_scale(double energy, double d_n, int n);

  bool theorem_regime() const { return gamma < 1.0 / 3.0; }
};

// z = tau + i eta in the upper half-plane.
struct MesoPoint {
  double tau = 0.0;
  double eta = 1.0;

  std::complex<double> z() const { return {tau, eta}; }
};

double semicircle_density(double x);
double semicircle_cdf(double x);

// s(z) = (-z + sqrt(z^2 - 4)) / 2, branch with Im s > 0 for Im z > 0.
std::complex<double> semicircle_stieltjes(std::complex<double> z);

// s_N(z) = N^{-1} sum (lambda_j - z)^{-1}; compensated summation kicks in
// for n >= 10^4.
std::complex<double> empirical_stieltjes(const Spectrum& s,
                                         std::complex<double> z);

// Tr G(E + z / d_N) = sum_j (lambda_j - E - (tau + i eta)/d_N)^{-1}
std::complex<double> resolvent_trace(const Spectrum& s, const MesoFrame& frame,
                                     MesoPoint p);

// (trace_m - mean trace) / d_N, expectation replaced by the ensemble
// empirical mean over the batch.
std::vector<std::complex<double>> centered_v(
    const std::vector<std::complex<double>>& traces, double d_n);

// X_N(f) = sum_j f(d_N (E - lambda_j))
double linear_statistic(const Spectrum& s, const MesoFrame& frame,
                        const TestFunction& f);

// sum_j [ log|lambda_j - E - (tau + i eta)/d_N| - log|... - i eta / d_N| ],
// always eigenvalue-wise, never through a determinant.
double log_char_process(const Spectrum& s, const MesoFrame& frame, double tau,
                        double eta);

}  // namespace meso
