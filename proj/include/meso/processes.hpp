#pragma once

#include <complex>
#include <vector>

#include "meso/rng.hpp"
#include "meso/spectral.hpp"

namespace meso {

// Hurst index, H < 1 strictly (the series coefficients need 2 - 2H > 0).
struct HurstParam {
  double h = 0.0;
};

// Covariance E(X(z1) conj(X(z2))) of the Cayley-series process: the
// principal power ((eta1 + eta2) - i(tau1 - tau2))^{2H-2}. This branch is
// the analytic sum of the series, is positive on the diagonal, and for
// H = 0 reduces to the exact reciprocal square 1/(i(z1 - conj z2))^2.
std::complex<double> gamma_covariance(MesoPoint z1, MesoPoint z2, HurstParam h);

double cayley_default_normalization(HurstParam h);  // 2^{H-1}

// Deterministic truncated-series covariance: normalization^2 times
// prefactors times sum_{k<=K} c_k^2 (w1 conj w2)^k.
std::complex<double> cayley_series_covariance(MesoPoint z1, MesoPoint z2,
                                              HurstParam h, int truncation,
                                              double normalization);

enum class PathOrigin { CayleySeries, CholeskyKernel, IntegratedGamma };

struct GPPath {
  std::vector<MesoPoint> points;
  std::vector<std::complex<double>> values;
  PathOrigin origin = PathOrigin::CayleySeries;
};

// Joint draw across all points from shared Gaussian coefficients,
// truncated at `truncation` terms (pass 0 to choose per-point truncation
// from the geometric tail bound; hard cap 10^5). Throws when the implied
// truncation error exceeds 1e-4 of the marginal standard deviation.
GPPath cayley_series_sample(const std::vector<MesoPoint>& points, HurstParam h,
                            int truncation, RandomStream& rng,
                            double normalization);

GPPath cayley_series_sample(const std::vector<MesoPoint>& points, HurstParam h,
                            int truncation, RandomStream& rng);

// Hermitian PSD covariance with identically zero pseudo-covariance.
struct ComplexGaussianSpec {
  std::vector<MesoPoint> points;
  std::vector<std::complex<double>> covariance;  // m x m, column-major

  static ComplexGaussianSpec gamma_kernel(const std::vector<MesoPoint>& pts,
                                          HurstParam h);
};

// C ~= sum_k l_k l_k^H, columns in original row indexing, diagonal
// pivoting, stopping at tol * trace. Throws if C is not PSD within that
// tolerance.
struct LowRankFactor {
  int dim = 0;
  int rank = 0;
  std::vector<std::complex<double>> columns;  // dim x rank, column-major
};

LowRankFactor pivoted_cholesky(const std::vector<std::complex<double>>& c,
                               int dim, double tol = 1e-10);

struct LowRankFactorReal {
  int dim = 0;
  int rank = 0;
  std::vector<double> columns;
};

LowRankFactorReal pivoted_cholesky_real(const std::vector<double>& c, int dim,
                                        double tol = 1e-10);

// Factors once, then draws circularly-symmetric complex Gaussian vectors
// with the given covariance.
class GaussianProcessSampler {
 public:
  explicit GaussianProcessSampler(ComplexGaussianSpec spec);
  GPPath sample(RandomStream& rng) const;

 private:
  ComplexGaussianSpec spec_;
  LowRankFactor factor_;
};

GPPath cholesky_gp_sample(const ComplexGaussianSpec& spec, RandomStream& rng);

// E((B(t) - B(s))^2) = log((t-s)^2 / eta^2 + 1) / 2
double b0_increment_variance(double t, double s, double eta);

// Real Gaussian path pinned at B(0) = 0 with the increment law above;
// grid must be sorted ascending and start at 0.
class B0Sampler {
 public:
  B0Sampler(std::vector<double> grid, double eta);
  std::vector<double> sample(RandomStream& rng) const;

 private:
  std::vector<double> grid_;
  LowRankFactorReal factor_;
};

std::vector<double> b0_sample(const std::vector<double>& grid, double eta,
                              RandomStream& rng);

}  // namespace meso
