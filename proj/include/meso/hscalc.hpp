#pragma once

#include <complex>

#include "meso/spectral.hpp"
#include "meso/test_function.hpp"

namespace meso {

// Smooth vertical cutoff: 1 on [0, eta_lo], 0 above 1, C^2 smoothstep
// (6u^5 - 15u^4 + 10u^3) in between.
struct CutoffProfile {
  double eta_lo = 0.25;

  double j(double eta) const;
  double dj(double eta) const;
  double max_abs_dj() const;  // recorded: sup |J'|
};

// Psi_f(t, eta) = (f(t) + i (f(t + eta) - f(t))) J(eta)
struct AlmostAnalyticExtension {
  TestFunction f;
  CutoffProfile cutoff;

  std::complex<double> psi(double t, double eta) const;
};

// (d/dt + i d/deta) Psi_f, by the displayed closed form
std::complex<double> dbar_psi(const AlmostAnalyticExtension& ext, double t,
                              double eta);

// (1/pi) \int_0^inf \int dbar Psi_f(x, y) / (lambda - x - iy) dx dy.
// Real part approximates f(lambda), imaginary part its Hilbert transform.
// Throws when the quadrature cannot reach `tol`.
std::complex<double> hs_reconstruct(const AlmostAnalyticExtension& ext,
                                    double lambda, double tol = 1e-5);

// Resolvent-route linear statistic over the rescaled eigenvalues
// x_j = d_N (E - lambda_j): (1/pi) Re \int\int dbar Psi_f(x, y) *
// sum_j (x_j - x - iy)^{-1} dx dy, which equals sum_j f(x_j) up to
// quadrature error.
double hs_linear_statistic(const Spectrum& s, const MesoFrame& frame,
                           const AlmostAnalyticExtension& ext,
                           double tol = 1e-3);

}  // namespace meso
