#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "meso/rng.hpp"

namespace meso {

// Off-diagonal entry laws. All are centered with E|W|^2 = 1 and E W^2 = 0;
// they differ in the fourth moment, which is the lever for the
// universality experiment.
enum class EnsembleKind { GUE, FourPhase, ComplexUniformDisk };

std::string to_string(EnsembleKind kind);
EnsembleKind ensemble_kind_from_string(const std::string& name);

// beta = E(|W|^2 - 1)^2 of the off-diagonal law.
double entry_beta(EnsembleKind kind);

struct EnsembleSpec {
  EnsembleKind kind = EnsembleKind::GUE;
  int n = 1;
  std::uint64_t seed = 0;
  std::uint64_t sample_index = 0;
};

// Normalized Hermitian draw H = W / sqrt(N), dense column-major storage.
// Only the upper triangle is drawn; the lower triangle is its exact
// conjugate, and the diagonal is real.
struct WignerSample {
  std::vector<std::complex<double>> entries;
  EnsembleSpec spec;

  std::complex<double> operator()(int i, int j) const {
    return entries[static_cast<std::size_t>(i) +
                   static_cast<std::size_t>(j) * spec.n];
  }
  double frobenius_norm() const;
};

struct Spectrum {
  std::vector<double> eigenvalues;  // ascending
  int n = 0;
  EnsembleSpec spec;
};

// One draw from the off-diagonal entry law (sequential stream form).
std::complex<double> sample_entry(EnsembleKind kind, RandomStream& rng);

// Positional form used to fill matrices: the draw for (i, j) depends only
// on (seed, sample_index, i, j).
std::complex<double> entry_at(const EnsembleSpec& spec, int i, int j);

WignerSample sample_wigner(const EnsembleSpec& spec);

// All eigenvalues, ascending, via the dense Hermitian solver
// (Householder tridiagonalization + implicitly shifted QL/QR as provided
// by LAPACK zheevd). Throws on non-convergence.
Spectrum compute_spectrum(const WignerSample& sample);

// max_j ||H v_j - lambda_j v_j||_2 / ||H||_F over `checks` randomly chosen
// eigenpairs. Recomputes the decomposition with eigenvectors, so it is
// meant for spot checks, not the sampling hot path.
double spectrum_residual(const WignerSample& sample, int checks,
                         RandomStream& rng);

// `{kind}_n{n}_seed{seed}_s{sample_index}`
std::string spectrum_basename(const EnsembleSpec& spec);

// CSV (one eigenvalue per row) plus a JSON sidecar with the spec fields.
void write_spectrum(const Spectrum& spectrum, const std::string& dir);

}  // namespace meso
