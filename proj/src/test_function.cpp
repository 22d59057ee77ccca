#include "meso/test_function.hpp"

#include <cmath>

namespace meso {

TestFunction dilated(const TestFunction& base, double scale) {
  TestFunction out;
  out.name = base.name + "_dilated";
  out.f = [g = base.f, scale](double x) { return g(scale * x); };
  out.df = [dg = base.df, scale](double x) { return scale * dg(scale * x); };
  out.alpha = base.alpha;
  out.beta = base.beta;
  if (base.has_fourier())
    out.fourier = [fh = base.fourier, scale](double k) {
      return fh(k / scale) / scale;
    };
  out.support_radius =
      base.support_radius > 0.0 ? base.support_radius / scale : 0.0;
  return out;
}

TestFunction operator+(const TestFunction& a, const TestFunction& b) {
  TestFunction out;
  out.name = a.name + "+" + b.name;
  out.f = [fa = a.f, fb = b.f](double x) { return fa(x) + fb(x); };
  out.df = [da = a.df, db = b.df](double x) { return da(x) + db(x); };
  out.alpha = std::min(a.alpha, b.alpha);
  out.beta = std::min(a.beta, b.beta);
  if (a.has_fourier() && b.has_fourier())
    out.fourier = [ha = a.fourier, hb = b.fourier](double k) {
      return ha(k) + hb(k);
    };
  if (a.compactly_supported() && b.compactly_supported())
    out.support_radius = std::max(a.support_radius, b.support_radius);
  return out;
}

namespace corpus {

namespace {
constexpr double kPi = M_PI;
constexpr double kSqrt2Pi = 2.5066282746310005024;
}  // namespace

TestFunction gaussian_bump() {
  TestFunction t;
  t.name = "gaussian";
  t.f = [](double x) { return std::exp(-0.5 * x * x); };
  t.df = [](double x) { return -x * std::exp(-0.5 * x * x); };
  t.alpha = 1.0;
  t.beta = 8.0;  // decays faster than any power; finite tag for reports
  t.fourier = [](double k) {
    return std::complex<double>(std::exp(-0.5 * k * k), 0.0);
  };
  t.h_half_self_closed = 1.0 / (2.0 * kPi);  // (1/2pi) int |k| e^{-k^2} dk
  return t;
}

TestFunction cosine_bump() {
  TestFunction t;
  t.name = "cosine_bump";
  t.f = [](double x) {
    if (std::abs(x) >= 1.0) return 0.0;
    const double c = std::cos(0.5 * kPi * x);
    return c * c;
  };
  t.df = [](double x) {
    if (std::abs(x) >= 1.0) return 0.0;
    return -0.5 * kPi * std::sin(kPi * x);
  };
  t.alpha = 1.0;  // f'' jumps at +-1 but f' is Lipschitz
  t.beta = 8.0;
  t.fourier = [](double k) {
    // pi^2 sin k / (sqrt(2 pi) k (pi^2 - k^2)), singularities removable
    const double a = std::abs(k);
    if (a < 1e-6) {
      return std::complex<double>((1.0 - k * k * (0.5 / 3.0 - 1.0 / (kPi * kPi))) / kSqrt2Pi, 0.0);
    }
    if (std::abs(a - kPi) < 1e-7) {
      return std::complex<double>(kPi * std::cos(a - kPi) / (2.0 * kPi * kSqrt2Pi), 0.0);
    }
    return std::complex<double>(
        kPi * kPi * std::sin(k) / (kSqrt2Pi * k * (kPi * kPi - k * k)), 0.0);
  };
  t.support_radius = 1.0;
  return t;
}

TestFunction cauchy_real(double tau, double eta) {
  TestFunction t;
  t.name = "cauchy_re";
  t.f = [tau, eta](double x) {
    const double u = x - tau;
    return u / (u * u + eta * eta);
  };
  t.df = [tau, eta](double x) {
    const double u = x - tau;
    const double d = u * u + eta * eta;
    return (eta * eta - u * u) / (d * d);
  };
  t.alpha = 1.0;
  t.beta = 0.0;  // only O(1/x); handled by closed-form Fourier data
  t.fourier = [tau, eta](double k) {
    // (r_hat + conj-pole half) / 2: support splits at k = 0
    const std::complex<double> phase = std::exp(std::complex<double>(0.0, -k * tau));
    const double decay = std::exp(-std::abs(k) * eta);
    const std::complex<double> i(0.0, 1.0);
    if (k < 0.0) return 0.5 * i * kSqrt2Pi * phase * decay;
    if (k > 0.0) return -0.5 * i * kSqrt2Pi * phase * decay;
    return std::complex<double>(0.0, 0.0);
  };
  t.h_half_self_closed = 1.0 / (8.0 * eta * eta);
  return t;
}

TestFunction cauchy_imag(double tau, double eta) {
  TestFunction t;
  t.name = "cauchy_im";
  t.f = [tau, eta](double x) {
    const double u = x - tau;
    return eta / (u * u + eta * eta);
  };
  t.df = [tau, eta](double x) {
    const double u = x - tau;
    const double d = u * u + eta * eta;
    return -2.0 * u * eta / (d * d);
  };
  t.alpha = 1.0;
  t.beta = 1.0;
  t.fourier = [tau, eta](double k) {
    const std::complex<double> phase = std::exp(std::complex<double>(0.0, -k * tau));
    return 0.5 * kSqrt2Pi * phase * std::exp(-std::abs(k) * eta);
  };
  t.h_half_self_closed = 1.0 / (8.0 * eta * eta);
  return t;
}

TestFunction poly_bump() {
  TestFunction t;
  t.name = "poly_bump";
  t.f = [](double x) {
    if (std::abs(x) >= 1.0) return 0.0;
    const double u = 1.0 - x * x;
    return u * u * u;
  };
  t.df = [](double x) {
    if (std::abs(x) >= 1.0) return 0.0;
    const double u = 1.0 - x * x;
    return -6.0 * x * u * u;
  };
  t.alpha = 1.0;
  t.beta = 8.0;
  t.support_radius = 1.0;
  return t;
}

TestFunction cos4_bump() {
  TestFunction t;
  t.name = "cos4_bump";
  t.f = [](double x) {
    if (std::abs(x) >= 1.0) return 0.0;
    const double c = std::cos(0.5 * kPi * x);
    return c * c * c * c;
  };
  t.df = [](double x) {
    if (std::abs(x) >= 1.0) return 0.0;
    const double c = std::cos(0.5 * kPi * x);
    return -2.0 * kPi * c * c * c * std::sin(0.5 * kPi * x);
  };
  t.alpha = 1.0;
  t.beta = 8.0;
  t.support_radius = 1.0;
  return t;
}

TestFunction mollifier() {
  TestFunction t;
  t.name = "mollifier";
  t.f = [](double x) {
    if (std::abs(x) >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - x * x));
  };
  t.df = [](double x) {
    if (std::abs(x) >= 1.0) return 0.0;
    const double u = 1.0 - x * x;
    return std::exp(1.0 - 1.0 / u) * (-2.0 * x / (u * u));
  };
  t.alpha = 1.0;
  t.beta = 8.0;
  t.support_radius = 1.0;
  return t;
}

TestFunction cusp_bump() {
  TestFunction t;
  t.name = "cusp_bump";
  t.f = [](double x) {
    if (std::abs(x) >= 1.0) return 0.0;
    const double u = 1.0 - x * x;
    return std::pow(std::abs(x), 1.5) * u * u * u;
  };
  t.df = [](double x) {
    if (std::abs(x) >= 1.0 || x == 0.0) return 0.0;
    const double u = 1.0 - x * x;
    const double s = x > 0.0 ? 1.0 : -1.0;
    const double a = std::sqrt(std::abs(x));
    return s * (1.5 * a * u * u * u) -
           6.0 * x * std::pow(std::abs(x), 1.5) * u * u;
  };
  t.alpha = 0.5;
  t.beta = 8.0;
  t.support_radius = 1.0;
  return t;
}

}  // namespace corpus

}  // namespace meso
