#include "meso/ensembles.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <stdexcept>

#include <lapacke.h>

extern "C" void openblas_set_num_threads(int) __attribute__((weak));

namespace meso {

namespace {

// Parallelism lives at the sample level; the BLAS backing LAPACK must not
// spawn its own threads or worker-count independence is lost.
void pin_blas_single_threaded() {
  static std::once_flag once;
  std::call_once(once, [] {
    setenv("OPENBLAS_NUM_THREADS", "1", 0);
    if (openblas_set_num_threads) openblas_set_num_threads(1);
  });
}

constexpr std::uint64_t kEntryDomain = 0x57494E4752ull;  // off-diagonal draws
constexpr std::uint64_t kDiagDomain = 0x4449414721ull;   // diagonal draws

std::array<std::uint32_t, 2> entry_key(std::uint64_t seed,
                                       std::uint64_t domain) {
  const std::uint64_t k = splitmix64(seed ^ splitmix64(domain));
  return {static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(k >> 32)};
}

struct UnitPair {
  double u1, u2;
};

UnitPair block_to_units(const std::array<std::uint32_t, 4>& b) {
  const std::uint64_t w0 = b[0] | (static_cast<std::uint64_t>(b[1]) << 32);
  const std::uint64_t w1 = b[2] | (static_cast<std::uint64_t>(b[3]) << 32);
  return {bits_to_unit(w0), bits_to_unit(w1)};
}

std::complex<double> offdiag_from_units(EnsembleKind kind, UnitPair u) {
  switch (kind) {
    case EnsembleKind::GUE: {
      double g0, g1;
      box_muller(u.u1, u.u2, g0, g1);
      return {g0 / std::sqrt(2.0), g1 / std::sqrt(2.0)};
    }
    case EnsembleKind::FourPhase: {
      // uniform on {1, i, -1, -i}, exact values
      const int q = static_cast<int>(u.u1 * 4.0) & 3;
      switch (q) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
      }
    }
    case EnsembleKind::ComplexUniformDisk: {
      // uniform on the disk of radius sqrt(2), so E|W|^2 = 1
      const double r = std::sqrt(2.0 * u.u1);
      const double theta = 2.0 * M_PI * u.u2;
      return {r * std::cos(theta), r * std::sin(theta)};
    }
  }
  throw std::logic_error("unknown ensemble kind");
}

double diag_from_units(EnsembleKind kind, UnitPair u) {
  if (kind == EnsembleKind::GUE) {
    double g0, g1;
    box_muller(u.u1, u.u2, g0, g1);
    return g0;
  }
  return u.u1 <= 0.5 ? 1.0 : -1.0;  // Rademacher sign
}

}  // namespace

std::string to_string(EnsembleKind kind) {
  switch (kind) {
    case EnsembleKind::GUE: return "gue";
    case EnsembleKind::FourPhase: return "fourphase";
    case EnsembleKind::ComplexUniformDisk: return "disk";
  }
  return "unknown";
}

EnsembleKind ensemble_kind_from_string(const std::string& name) {
  if (name == "gue" || name == "GUE") return EnsembleKind::GUE;
  if (name == "fourphase" || name == "four-phase")
    return EnsembleKind::FourPhase;
  if (name == "disk" || name == "uniform-disk")
    return EnsembleKind::ComplexUniformDisk;
  throw std::invalid_argument("unknown ensemble kind: " + name);
}

double entry_beta(EnsembleKind kind) {
  switch (kind) {
    case EnsembleKind::GUE: return 1.0;                  // E|W|^4 = 2
    case EnsembleKind::FourPhase: return 0.0;            // |W| = 1
    case EnsembleKind::ComplexUniformDisk: return 1.0 / 3.0;  // E|W|^4 = 4/3
  }
  throw std::logic_error("unknown ensemble kind");
}

std::complex<double> sample_entry(EnsembleKind kind, RandomStream& rng) {
  return offdiag_from_units(kind, {rng.next_unit(), rng.next_unit()});
}

std::complex<double> entry_at(const EnsembleSpec& spec, int i, int j) {
  const auto ctr = std::array<std::uint32_t, 4>{
      static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j),
      static_cast<std::uint32_t>(spec.sample_index),
      static_cast<std::uint32_t>(spec.sample_index >> 32)};
  if (i == j) {
    const auto u = block_to_units(philox4x32(ctr, entry_key(spec.seed, kDiagDomain)));
    return {diag_from_units(spec.kind, u), 0.0};
  }
  if (i > j) return std::conj(entry_at(spec, j, i));
  const auto u = block_to_units(philox4x32(ctr, entry_key(spec.seed, kEntryDomain)));
  return offdiag_from_units(spec.kind, u);
}

WignerSample sample_wigner(const EnsembleSpec& spec) {
  if (spec.n < 1) throw std::invalid_argument("sample_wigner: n must be >= 1");
  const int n = spec.n;
  WignerSample out;
  out.spec = spec;
  out.entries.assign(static_cast<std::size_t>(n) * n, {});
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i <= j; ++i) {
      const std::complex<double> w = entry_at(spec, i, j) * scale;
      out.entries[static_cast<std::size_t>(i) + static_cast<std::size_t>(j) * n] = w;
      if (i != j)
        out.entries[static_cast<std::size_t>(j) + static_cast<std::size_t>(i) * n] =
            std::conj(w);
    }
  }
  return out;
}

double WignerSample::frobenius_norm() const {
  double s = 0.0;
  for (const auto& v : entries) s += std::norm(v);
  return std::sqrt(s);
}

Spectrum compute_spectrum(const WignerSample& sample) {
  pin_blas_single_threaded();
  const int n = sample.spec.n;
  std::vector<std::complex<double>> a = sample.entries;
  std::vector<double> w(static_cast<std::size_t>(n));
  const int info = LAPACKE_zheevd(
      LAPACK_COL_MAJOR, 'N', 'U', n,
      reinterpret_cast<lapack_complex_double*>(a.data()), n, w.data());
  if (info != 0)
    throw std::runtime_error("compute_spectrum: eigensolve failed, info=" +
                             std::to_string(info) + " (" +
                             spectrum_basename(sample.spec) + ")");
  Spectrum s;
  s.eigenvalues = std::move(w);
  s.n = n;
  s.spec = sample.spec;
  return s;
}

double spectrum_residual(const WignerSample& sample, int checks,
                         RandomStream& rng) {
  pin_blas_single_threaded();
  const int n = sample.spec.n;
  std::vector<std::complex<double>> v = sample.entries;
  std::vector<double> w(static_cast<std::size_t>(n));
  const int info = LAPACKE_zheevd(
      LAPACK_COL_MAJOR, 'V', 'U', n,
      reinterpret_cast<lapack_complex_double*>(v.data()), n, w.data());
  if (info != 0)
    throw std::runtime_error("spectrum_residual: eigensolve failed, info=" +
                             std::to_string(info));
  const double hnorm = sample.frobenius_norm();
  double worst = 0.0;
  for (int c = 0; c < checks; ++c) {
    const int j = static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(n));
    double r2 = 0.0;
    for (int i = 0; i < n; ++i) {
      std::complex<double> acc = 0.0;
      for (int k = 0; k < n; ++k)
        acc += sample(i, k) * v[static_cast<std::size_t>(k) + static_cast<std::size_t>(j) * n];
      acc -= w[j] * v[static_cast<std::size_t>(i) + static_cast<std::size_t>(j) * n];
      r2 += std::norm(acc);
    }
    worst = std::max(worst, std::sqrt(r2) / hnorm);
  }
  return worst;
}

std::string spectrum_basename(const EnsembleSpec& spec) {
  return to_string(spec.kind) + "_n" + std::to_string(spec.n) + "_seed" +
         std::to_string(spec.seed) + "_s" + std::to_string(spec.sample_index);
}

}  // namespace meso
