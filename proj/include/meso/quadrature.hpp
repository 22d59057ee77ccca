#pragma once

#include <complex>
#include <functional>

namespace meso {

struct QuadratureResult {
  std::complex<double> value{0.0, 0.0};
  double abs_error = 0.0;
  long evaluations = 0;
  bool converged = false;

  double real() const { return value.real(); }
};

struct QuadratureOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  int max_intervals = 5000;
};

// Globally adaptive Gauss-Kronrod 7/15 on [a, b]. Subdivides the interval
// with the largest error estimate until |error| <= max(abs_tol,
// rel_tol * |value|) or the interval budget runs out.
QuadratureResult integrate(const std::function<std::complex<double>(double)>& f,
                           double a, double b,
                           const QuadratureOptions& opts = {});

QuadratureResult integrate_real(const std::function<double(double)>& f,
                                double a, double b,
                                const QuadratureOptions& opts = {});

}  // namespace meso
