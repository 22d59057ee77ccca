#pragma once

#include <complex>
#include <vector>

#include "meso/test_function.hpp"

namespace meso {

// Uniform grid samples. The length must be a power of two on every
// transform path.
struct GridFunction {
  double x0 = 0.0;
  double dx = 1.0;
  std::vector<std::complex<double>> values;

  double x(std::size_t j) const { return x0 + dx * static_cast<double>(j); }
  std::size_t size() const { return values.size(); }
};

// Default acceptance grid: [-512, 512] with 2^20 points.
struct SobolevOptions {
  double half_width = 512.0;
  int log2_len = 20;
};

GridFunction sample_on_grid(const TestFunction& f, double half_width,
                            std::size_t len);

// In-place radix-2 transform; forward kernel e^{-2 pi i jm / L}, inverse
// carries the 1/L factor.
void fft_radix2(std::vector<std::complex<double>>& a, bool inverse);

// Samples of fhat on the conjugate grid (ascending k, dk = 2 pi / (L dx)),
// continuum-normalized: the x0 phase and the (2 pi)^{-1/2} prefactor are
// applied, so the result approximates the integral transform rather than
// a bare DFT. Throws if the tails violate the decay check
// |f| < 1e-8 max|f| at both grid ends.
GridFunction fourier_transform(const GridFunction& g);
GridFunction inverse_fourier_transform(const GridFunction& ghat);

// Multiplier -i sgn(k) on the DFT grid; sgn(0) := 0 and the Nyquist bin is
// zeroed so real input maps to real output.
GridFunction hilbert_transform(const GridFunction& g);

// (1 / 2 pi) \int |k| fhat(k) conj(ghat(k)) dk, trapezoid on the grid.
std::complex<double> h_half_inner(const GridFunction& f, const GridFunction& g);

// TestFunction route: closed-form Fourier data when both sides carry it,
// otherwise FFT of grid samples (subject to the decay check).
std::complex<double> h_half_inner(const TestFunction& f, const TestFunction& g,
                                  const SobolevOptions& opts = {});

// Closed forms for resolvent kernels r_a(x) = (x - tau_a - i eta_a)^{-1}:
// <r_1, r_2> = ((eta_1 + eta_2) - i (tau_1 - tau_2))^{-2}, and the
// real-part pair <Re r_1, Re r_2> = Re(<r_1, r_2>) / 2.
std::complex<double> h_half_cauchy_pair(double tau1, double eta1, double tau2,
                                        double eta2);
double h_half_cauchy_real_pair(double tau1, double eta1, double tau2,
                               double eta2);

}  // namespace meso
