#include <doctest.h>

#include <cmath>
#include <complex>

#include "meso/quadrature.hpp"
#include "meso/sobolev.hpp"

using namespace meso;
using cd = std::complex<double>;

namespace {

GridFunction lorentzian_grid() {
  TestFunction f;
  f.f = [](double x) { return 1.0 / (1.0 + x * x); };
  f.df = [](double x) { return -2.0 * x / ((1.0 + x * x) * (1.0 + x * x)); };
  return sample_on_grid(f, 16384.0, std::size_t{1} << 20);
}

std::size_t grid_index(const GridFunction& g, double x) {
  return static_cast<std::size_t>(std::lround((x - g.x0) / g.dx));
}

}  // namespace

TEST_CASE("radix-2 transform agrees with the direct DFT") {
  std::vector<cd> a = {{1, 0}, {2, -1}, {0, 3}, {-1, 0},
                       {0.5, 0.5}, {0, 0}, {4, 1}, {-2, 2}};
  std::vector<cd> direct(a.size());
  const std::size_t n = a.size();
  for (std::size_t m = 0; m < n; ++m) {
    cd acc{0, 0};
    for (std::size_t j = 0; j < n; ++j) {
      const double ang = -2.0 * M_PI * static_cast<double>(m * j) / n;
      acc += a[j] * cd(std::cos(ang), std::sin(ang));
    }
    direct[m] = acc;
  }
  std::vector<cd> fast = a;
  fft_radix2(fast, false);
  for (std::size_t m = 0; m < n; ++m) CHECK(std::abs(fast[m] - direct[m]) < 1e-12);
  fft_radix2(fast, true);
  for (std::size_t m = 0; m < n; ++m) CHECK(std::abs(fast[m] - a[m]) < 1e-12);
}

TEST_CASE("gaussian is self-dual under the continuum convention") {
  const GridFunction g =
      sample_on_grid(corpus::gaussian_bump(), 64.0, std::size_t{1} << 13);
  const GridFunction ghat = fourier_transform(g);
  double worst = 0.0;
  for (std::size_t m = 0; m < ghat.size(); ++m) {
    const double k = ghat.x(m);
    if (std::abs(k) > 8.0) continue;
    worst = std::max(worst, std::abs(ghat.values[m] - cd(std::exp(-0.5 * k * k), 0)));
  }
  CHECK(worst <= 1e-8);

  // round trip back to x space
  const GridFunction back = inverse_fourier_transform(ghat);
  double rt = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j)
    rt = std::max(rt, std::abs(back.values[j] - g.values[j]));
  CHECK(rt <= 1e-12);
}

TEST_CASE("transform is linear and annihilates zero") {
  GridFunction z;
  z.x0 = -32.0;
  z.dx = 64.0 / 1024.0;
  z.values.assign(1024, cd(0, 0));
  const GridFunction zhat = fourier_transform(z);
  for (const cd v : zhat.values) CHECK(std::abs(v) == 0.0);

  const GridFunction f =
      sample_on_grid(corpus::gaussian_bump(), 64.0, std::size_t{1} << 12);
  GridFunction g = f;
  for (std::size_t j = 0; j < g.size(); ++j)
    g.values[j] = std::exp(-0.25 * g.x(j) * g.x(j)) * cd(0.3, 0.1);
  GridFunction combo = f;
  const cd a(2.0, -1.0), b(0.5, 3.0);
  for (std::size_t j = 0; j < combo.size(); ++j)
    combo.values[j] = a * f.values[j] + b * g.values[j];
  const GridFunction fh = fourier_transform(f);
  const GridFunction gh = fourier_transform(g);
  const GridFunction ch = fourier_transform(combo);
  double worst = 0.0;
  for (std::size_t m = 0; m < ch.size(); ++m)
    worst = std::max(worst,
                     std::abs(ch.values[m] - (a * fh.values[m] + b * gh.values[m])));
  CHECK(worst <= 1e-12);
}

TEST_CASE("closed-form fourier data matches the FFT on |k| <= 20") {
  for (const TestFunction f :
       {corpus::gaussian_bump(), corpus::cosine_bump()}) {
    const GridFunction fh =
        fourier_transform(sample_on_grid(f, 64.0, std::size_t{1} << 14));
    double worst = 0.0;
    for (std::size_t m = 0; m < fh.size(); ++m) {
      const double k = fh.x(m);
      if (std::abs(k) > 20.0) continue;
      worst = std::max(worst, std::abs(fh.values[m] - f.fourier(k)));
    }
    CHECK(worst <= 1e-6);
  }
}

TEST_CASE("plancherel holds to relative 1e-8") {
  for (const TestFunction f :
       {corpus::gaussian_bump(), corpus::cosine_bump(), corpus::poly_bump()}) {
    const GridFunction g = sample_on_grid(f, 64.0, std::size_t{1} << 14);
    const GridFunction gh = fourier_transform(g);
    double nx = 0.0, nk = 0.0;
    for (const cd v : g.values) nx += std::norm(v);
    for (const cd v : gh.values) nk += std::norm(v);
    nx *= g.dx;
    nk *= gh.dx;
    CHECK(std::abs(nx - nk) <= 1e-8 * nx);
  }
}

TEST_CASE("decay check rejects slowly decaying tails") {
  const TestFunction slow = corpus::cauchy_real(0.0, 1.0);
  const GridFunction g = sample_on_grid(slow, 512.0, std::size_t{1} << 12);
  CHECK_THROWS_AS(fourier_transform(g), std::domain_error);
}

TEST_CASE("H^{1/2} form: gaussian value, symmetry, positivity") {
  const TestFunction g = corpus::gaussian_bump();
  const cd self = h_half_inner(g, g);
  CHECK(self.real() == doctest::Approx(1.0 / (2.0 * M_PI)).epsilon(1e-8));
  CHECK(std::abs(self.imag()) < 1e-12);

  // conjugate symmetry and positivity across the corpus
  const TestFunction fns[] = {corpus::gaussian_bump(), corpus::cosine_bump(),
                              corpus::poly_bump()};
  for (const auto& a : fns) {
    CHECK(h_half_inner(a, a).real() >= 0.0);
    for (const auto& b : fns) {
      const cd ab = h_half_inner(a, b);
      const cd ba = h_half_inner(b, a);
      CHECK(std::abs(ab - std::conj(ba)) < 1e-10);
    }
  }
}

TEST_CASE("H^{1/2} form is scale invariant") {
  for (const TestFunction f : {corpus::gaussian_bump(), corpus::cosine_bump()}) {
    const double base = h_half_inner(f, f).real();
    for (const double a : {0.5, 2.0}) {
      const TestFunction fa = dilated(f, a);
      CHECK(h_half_inner(fa, fa).real() ==
            doctest::Approx(base).epsilon(1e-6));
    }
  }
}

TEST_CASE("cauchy pairs: closed form against the spectral grid route") {
  // self inner product at eta = 1: 1/8
  const TestFunction f = corpus::cauchy_real(0.0, 1.0);
  CHECK(f.h_half_self_closed == doctest::Approx(0.125));
  CHECK(h_half_inner(f, f).real() == doctest::Approx(0.125).epsilon(1e-6));

  // cross pair against the contour formula
  const double t1 = 0.4, e1 = 1.1, t2 = -0.7, e2 = 0.6;
  const TestFunction f1 = corpus::cauchy_real(t1, e1);
  const TestFunction f2 = corpus::cauchy_real(t2, e2);
  const cd grid_route = h_half_inner(f1, f2);
  CHECK(grid_route.real() ==
        doctest::Approx(h_half_cauchy_real_pair(t1, e1, t2, e2)).epsilon(1e-6));

  // imaginary-part kernels carry the same self inner product
  const TestFunction fi = corpus::cauchy_imag(0.3, 0.9);
  CHECK(h_half_inner(fi, fi).real() ==
        doctest::Approx(1.0 / (8.0 * 0.9 * 0.9)).epsilon(1e-6));
}

TEST_CASE("hilbert transform of the lorentzian") {
  const GridFunction g = lorentzian_grid();
  const GridFunction h = hilbert_transform(g);
  double worst = 0.0;
  for (std::size_t j = 0; j < h.size(); ++j) {
    const double x = h.x(j);
    if (std::abs(x) > 10.0) continue;
    worst = std::max(worst, std::abs(h.values[j].real() - x / (1.0 + x * x)));
  }
  CHECK(worst <= 1e-6);

  // principal-value quadrature oracle at 5 points
  auto f = [](double x) { return 1.0 / (1.0 + x * x); };
  for (const double x : {-3.0, -0.5, 0.0, 1.0, 7.5}) {
    const auto pv = integrate_real(
        [&](double u) { return (f(x - u) - f(x + u)) / u / M_PI; }, 0.0,
        2000.0, {1e-10, 1e-10, 8000});
    CHECK(h.values[grid_index(h, x)].real() ==
          doctest::Approx(pv.value.real()).epsilon(5e-7));
  }
}

TEST_CASE("hilbert transform: oddness at 0 and involution") {
  const GridFunction g =
      sample_on_grid(corpus::gaussian_bump(), 128.0, std::size_t{1} << 14);
  const GridFunction h = hilbert_transform(g);
  CHECK(std::abs(h.values[grid_index(h, 0.0)]) < 1e-10);

  // the double application needs an image that still decays: a zero-mean
  // function has H[f] = O(1/x^2) rather than O(1/x)
  TestFunction hermite;
  hermite.f = [](double x) { return (x * x - 1.0) * std::exp(-0.5 * x * x); };
  hermite.df = [](double x) {
    return (3.0 * x - x * x * x) * std::exp(-0.5 * x * x);
  };
  const GridFunction z =
      sample_on_grid(hermite, 512.0, std::size_t{1} << 16);
  const GridFunction hz = hilbert_transform(z);
  const GridFunction hhz = hilbert_transform(hz);
  double worst = 0.0;
  for (std::size_t j = 0; j < hhz.size(); ++j) {
    const double x = hhz.x(j);
    if (std::abs(x) > 10.0) continue;
    worst = std::max(worst, std::abs(hhz.values[j] + z.values[j]));
  }
  CHECK(worst <= 1e-6);
}
