#include "meso/processes.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace meso {

namespace {

constexpr int kTruncationCap = 100000;
constexpr double kTailFraction = 1e-4;  // of the marginal standard deviation

void require_upper_half_plane(const MesoPoint& p) {
  if (!(p.eta > 0.0))
    throw std::invalid_argument("point must lie in the upper half-plane");
}

void require_hurst(HurstParam h) {
  if (!(h.h < 1.0)) throw std::invalid_argument("Hurst index must be < 1");
}

std::complex<double> cayley_map(MesoPoint p) {
  const std::complex<double> z = p.z();
  const std::complex<double> i(0.0, 1.0);
  return (z - i) / (z + i);
}

std::complex<double> series_prefactor(MesoPoint p, HurstParam h) {
  const std::complex<double> z = p.z();
  const std::complex<double> base = (z + std::complex<double>(0.0, 1.0)) / 2.0;
  return std::exp((2.0 * h.h - 2.0) * std::log(base));
}

// log of c_k^2 = Gamma(a + k) / (Gamma(a) k!) with a = 2 - 2H, by the
// ratio recurrence (a + k - 1) / k.
class CoefficientTable {
 public:
  explicit CoefficientTable(double a) : a_(a) { log_c2_.push_back(0.0); }

  double log_c2(int k) {
    while (static_cast<int>(log_c2_.size()) <= k) {
      const double kk = static_cast<double>(log_c2_.size());
      log_c2_.push_back(log_c2_.back() + std::log((a_ + kk - 1.0) / kk));
    }
    return log_c2_[static_cast<std::size_t>(k)];
  }

  double c(int k) { return std::exp(0.5 * log_c2(k)); }

 private:
  double a_;
  std::vector<double> log_c2_;
};

// Smallest K whose geometric tail of sum c_k^2 x^k is below
// (kTailFraction)^2 times the full sum, x = |w|^2. Returns cap + 1 when
// unreachable.
int required_truncation(double x, double a, CoefficientTable& table) {
  if (x <= 0.0) return 1;
  const double full_sum = std::pow(1.0 - x, -a);
  const double budget = kTailFraction * kTailFraction * full_sum;
  double term = 1.0;  // c_0^2 x^0
  for (int k = 0; k <= kTruncationCap; ++k) {
    // tail after K = k bounded by next_term / (1 - rho) with
    // rho >= x * (a + j) / (j + 1) for all j > k
    const double next = std::exp(table.log_c2(k + 1)) * std::pow(x, k + 1);
    const double rho = x * std::max(1.0, (a + k + 1.0) / (k + 2.0));
    if (rho < 1.0 && next / (1.0 - rho) <= budget) return k + 1;
    term = next;
    (void)term;
  }
  return kTruncationCap + 1;
}

}  // namespace

std::complex<double> gamma_covariance(MesoPoint z1, MesoPoint z2,
                                      HurstParam h) {
  require_upper_half_plane(z1);
  require_upper_half_plane(z2);
  require_hurst(h);
  const std::complex<double> w(z1.eta + z2.eta, -(z1.tau - z2.tau));
  if (h.h == 0.0) return 1.0 / (w * w);
  return std::exp((2.0 * h.h - 2.0) * std::log(w));
}

double cayley_default_normalization(HurstParam h) {
  return std::pow(2.0, h.h - 1.0);
}

std::complex<double> cayley_series_covariance(MesoPoint z1, MesoPoint z2,
                                              HurstParam h, int truncation,
                                              double normalization) {
  require_upper_half_plane(z1);
  require_upper_half_plane(z2);
  require_hurst(h);
  CoefficientTable table(2.0 - 2.0 * h.h);
  const std::complex<double> x = cayley_map(z1) * std::conj(cayley_map(z2));
  std::complex<double> xk(1.0, 0.0);
  std::complex<double> sum(0.0, 0.0);
  for (int k = 0; k <= truncation; ++k) {
    sum += std::exp(table.log_c2(k)) * xk;
    xk *= x;
  }
  return normalization * normalization * series_prefactor(z1, h) *
         std::conj(series_prefactor(z2, h)) * sum;
}

GPPath cayley_series_sample(const std::vector<MesoPoint>& points, HurstParam h,
                            int truncation, RandomStream& rng) {
  return cayley_series_sample(points, h, truncation, rng,
                              cayley_default_normalization(h));
}

GPPath cayley_series_sample(const std::vector<MesoPoint>& points, HurstParam h,
                            int truncation, RandomStream& rng,
                            double normalization) {
  if (truncation < 0)
    throw std::invalid_argument("cayley_series_sample: truncation < 0");
  require_hurst(h);
  const double a = 2.0 - 2.0 * h.h;
  CoefficientTable table(a);

  int terms = truncation;
  for (const auto& p : points) {
    require_upper_half_plane(p);
    const double x = std::norm(cayley_map(p));
    const int needed = required_truncation(x, a, table);
    if (truncation == 0) {
      if (needed > kTruncationCap)
        throw std::domain_error(
            "cayley_series_sample: point too close to the series boundary "
            "|(z-i)/(z+i)| = 1; truncation error cannot reach tolerance");
      terms = std::max(terms, needed);
    } else if (std::sqrt(x) >= 1.0 - 1e-6 && needed > truncation) {
      throw std::domain_error(
          "cayley_series_sample: truncation error exceeds tolerance at "
          "|(z-i)/(z+i)| >= 1 - 1e-6");
    }
  }
  if (terms == 0) terms = 1;

  // shared coefficients across all points: one joint draw
  std::vector<std::complex<double>> xi(static_cast<std::size_t>(terms));
  for (auto& v : xi) {
    const double re = rng.next_gaussian();
    const double im = rng.next_gaussian();
    v = {re, im};
  }

  GPPath path;
  path.points = points;
  path.origin = PathOrigin::CayleySeries;
  path.values.resize(points.size());
  const double scale = normalization / std::sqrt(2.0);
  for (std::size_t p = 0; p < points.size(); ++p) {
    const std::complex<double> w = cayley_map(points[p]);
    std::complex<double> wk(1.0, 0.0);
    std::complex<double> acc(0.0, 0.0);
    for (int k = 0; k < terms; ++k) {
      acc += table.c(k) * wk * xi[static_cast<std::size_t>(k)];
      wk *= w;
    }
    path.values[p] = scale * series_prefactor(points[p], h) * acc;
  }
  return path;
}

ComplexGaussianSpec ComplexGaussianSpec::gamma_kernel(
    const std::vector<MesoPoint>& pts, HurstParam h) {
  ComplexGaussianSpec spec;
  spec.points = pts;
  const std::size_t m = pts.size();
  spec.covariance.resize(m * m);
  for (std::size_t b = 0; b < m; ++b)
    for (std::size_t a = 0; a < m; ++a)
      spec.covariance[a + b * m] = gamma_covariance(pts[a], pts[b], h);
  return spec;
}

LowRankFactor pivoted_cholesky(const std::vector<std::complex<double>>& c,
                               int dim, double tol) {
  const std::size_t m = static_cast<std::size_t>(dim);
  if (c.size() != m * m)
    throw std::invalid_argument("pivoted_cholesky: size mismatch");
  std::vector<double> diag(m);
  double trace = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    diag[i] = c[i + i * m].real();
    trace += diag[i];
  }
  const double floor = tol * std::max(trace, 1.0e-300);

  LowRankFactor out;
  out.dim = dim;
  std::vector<bool> used(m, false);
  for (std::size_t step = 0; step < m; ++step) {
    std::size_t pivot = m;
    double best = -1.0;
    for (std::size_t i = 0; i < m; ++i)
      if (!used[i] && diag[i] > best) {
        best = diag[i];
        pivot = i;
      }
    if (pivot == m || best <= floor) {
      for (std::size_t i = 0; i < m; ++i)
        if (!used[i] && diag[i] < -floor)
          throw std::domain_error(
              "pivoted_cholesky: matrix is not positive semidefinite within "
              "tolerance");
      break;
    }
    const double piv = std::sqrt(best);
    std::vector<std::complex<double>> col(m, {0.0, 0.0});
    col[pivot] = piv;
    for (std::size_t i = 0; i < m; ++i) {
      if (used[i] || i == pivot) continue;
      std::complex<double> v = c[i + pivot * m];
      for (int k = 0; k < out.rank; ++k)
        v -= out.columns[i + static_cast<std::size_t>(k) * m] *
             std::conj(out.columns[pivot + static_cast<std::size_t>(k) * m]);
      col[i] = v / piv;
      diag[i] -= std::norm(col[i]);
    }
    used[pivot] = true;
    out.columns.insert(out.columns.end(), col.begin(), col.end());
    ++out.rank;
  }
  return out;
}

LowRankFactorReal pivoted_cholesky_real(const std::vector<double>& c, int dim,
                                        double tol) {
  const std::size_t m = static_cast<std::size_t>(dim);
  std::vector<std::complex<double>> cc(m * m);
  for (std::size_t i = 0; i < m * m; ++i) cc[i] = c[i];
  const LowRankFactor f = pivoted_cholesky(cc, dim, tol);
  LowRankFactorReal out;
  out.dim = f.dim;
  out.rank = f.rank;
  out.columns.resize(f.columns.size());
  for (std::size_t i = 0; i < f.columns.size(); ++i)
    out.columns[i] = f.columns[i].real();
  return out;
}

GaussianProcessSampler::GaussianProcessSampler(ComplexGaussianSpec spec)
    : spec_(std::move(spec)),
      factor_(pivoted_cholesky(spec_.covariance,
                               static_cast<int>(spec_.points.size()))) {}

GPPath GaussianProcessSampler::sample(RandomStream& rng) const {
  const std::size_t m = spec_.points.size();
  GPPath path;
  path.points = spec_.points;
  path.origin = PathOrigin::CholeskyKernel;
  path.values.assign(m, {0.0, 0.0});
  const double comp = 1.0 / std::sqrt(2.0);  // components N(0, 1/2)
  for (int k = 0; k < factor_.rank; ++k) {
    const std::complex<double> xi(comp * rng.next_gaussian(),
                                  comp * rng.next_gaussian());
    const std::complex<double>* col =
        factor_.columns.data() + static_cast<std::size_t>(k) * m;
    for (std::size_t i = 0; i < m; ++i) path.values[i] += col[i] * xi;
  }
  return path;
}

GPPath cholesky_gp_sample(const ComplexGaussianSpec& spec, RandomStream& rng) {
  return GaussianProcessSampler(spec).sample(rng);
}

double b0_increment_variance(double t, double s, double eta) {
  if (!(eta > 0.0))
    throw std::invalid_argument("b0_increment_variance: eta must be > 0");
  const double d = (t - s) / eta;
  return 0.5 * std::log1p(d * d);
}

B0Sampler::B0Sampler(std::vector<double> grid, double eta)
    : grid_(std::move(grid)) {
  if (grid_.empty() || grid_.front() != 0.0)
    throw std::invalid_argument("B0Sampler: grid must start at 0");
  if (!std::is_sorted(grid_.begin(), grid_.end()))
    throw std::invalid_argument("B0Sampler: grid must be sorted ascending");
  const std::size_t m = grid_.size();
  // unique covariance with stationary increments and B(0) = 0:
  // R(t, s) = (v(t) + v(s) - v(t - s)) / 2
  auto v = [eta](double d) { return b0_increment_variance(d, 0.0, eta); };
  std::vector<double> c(m * m);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < m; ++i)
      c[i + j * m] =
          0.5 * (v(grid_[i]) + v(grid_[j]) - v(grid_[i] - grid_[j]));
  factor_ = pivoted_cholesky_real(c, static_cast<int>(m));
}

std::vector<double> B0Sampler::sample(RandomStream& rng) const {
  const std::size_t m = grid_.size();
  std::vector<double> path(m, 0.0);
  for (int k = 0; k < factor_.rank; ++k) {
    const double xi = rng.next_gaussian();
    const double* col = factor_.columns.data() + static_cast<std::size_t>(k) * m;
    for (std::size_t i = 0; i < m; ++i) path[i] += col[i] * xi;
  }
  return path;
}

std::vector<double> b0_sample(const std::vector<double>& grid, double eta,
                              RandomStream& rng) {
  return B0Sampler(grid, eta).sample(rng);
}

}  // namespace meso
