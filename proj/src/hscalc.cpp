#include "meso/hscalc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "meso/quadrature.hpp"

namespace meso {

namespace {

// C^2 smoothstep on [0, 1]
double smoothstep(double u) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  return u * u * u * (10.0 + u * (-15.0 + 6.0 * u));
}

double smoothstep_deriv(double u) {
  if (u <= 0.0 || u >= 1.0) return 0.0;
  return 30.0 * u * u * (1.0 - u) * (1.0 - u);
}

struct HsDomain {
  double x_lo, x_hi;
};

// dbar Psi_f vanishes for y >= 1; in x it is confined to the support of
// f(t), f(t + y) for compactly supported f.
HsDomain integration_domain(const AlmostAnalyticExtension& ext) {
  if (!ext.f.compactly_supported())
    throw std::invalid_argument(
        "hs quadrature requires a compactly supported test function");
  const double r = ext.f.support_radius;
  return {-r - 1.0, r};
}

}  // namespace

double CutoffProfile::j(double eta) const {
  if (eta <= eta_lo) return 1.0;
  if (eta >= 1.0) return 0.0;
  return 1.0 - smoothstep((eta - eta_lo) / (1.0 - eta_lo));
}

double CutoffProfile::dj(double eta) const {
  if (eta <= eta_lo || eta >= 1.0) return 0.0;
  return -smoothstep_deriv((eta - eta_lo) / (1.0 - eta_lo)) / (1.0 - eta_lo);
}

double CutoffProfile::max_abs_dj() const {
  // sup |S'| = 15/8 at u = 1/2
  return (15.0 / 8.0) / (1.0 - eta_lo);
}

std::complex<double> AlmostAnalyticExtension::psi(double t, double eta) const {
  const double jt = cutoff.j(eta);
  if (jt == 0.0) return {0.0, 0.0};
  const double ft = f.f(t);
  return std::complex<double>(ft, f.f(t + eta) - ft) * jt;
}

std::complex<double> dbar_psi(const AlmostAnalyticExtension& ext, double t,
                              double eta) {
  const double jt = ext.cutoff.j(eta);
  const double djt = ext.cutoff.dj(eta);
  if (jt == 0.0 && djt == 0.0) return {0.0, 0.0};
  std::complex<double> out{0.0, 0.0};
  if (jt != 0.0) {
    const double dft = ext.f.df(t);
    const double dfte = ext.f.df(t + eta);
    out += std::complex<double>(dft - dfte, dfte - dft) * jt;
  }
  if (djt != 0.0) {
    const double ft = ext.f.f(t);
    out += std::complex<double>(-(ext.f.f(t + eta) - ft), ft) * djt;
  }
  return out;
}

namespace {

// Iterated adaptive quadrature of
// (1/pi) \int_0^1 \int dbar Psi_f(x, y) R(x, y) dx dy
// with R the resolvent factor. The inner integral splits at the real
// parts in `pole_res` to help the panels localize.
std::complex<double> hs_double_integral(
    const AlmostAnalyticExtension& ext,
    const std::function<std::complex<double>(double, double)>& resolvent,
    const std::vector<double>& inner_splits, double tol,
    const char* caller) {
  const HsDomain dom = integration_domain(ext);

  QuadratureOptions inner_opts;
  inner_opts.abs_tol = 0.02 * tol;
  inner_opts.rel_tol = 0.0;
  inner_opts.max_intervals = 40000;
  QuadratureOptions outer_opts;
  outer_opts.abs_tol = 0.5 * tol;
  outer_opts.rel_tol = 0.0;
  outer_opts.max_intervals = 4000;

  bool inner_ok = true;
  auto outer_integrand = [&](double y) -> std::complex<double> {
    auto fx = [&](double x) { return dbar_psi(ext, x, y) * resolvent(x, y); };
    std::complex<double> total{0.0, 0.0};
    double a = dom.x_lo;
    double err = 0.0;
    long segments = 0;
    for (const double s : inner_splits) {
      if (s <= a || s >= dom.x_hi) continue;
      const QuadratureResult r = integrate(fx, a, s, inner_opts);
      total += r.value;
      err += r.abs_error;
      inner_ok = inner_ok && r.converged;
      a = s;
      ++segments;
    }
    const QuadratureResult r = integrate(fx, a, dom.x_hi, inner_opts);
    inner_ok = inner_ok && r.converged;
    (void)err;
    (void)segments;
    return total + r.value;
  };

  const QuadratureResult outer = integrate(outer_integrand, 0.0, 1.0, outer_opts);
  if (!outer.converged || !inner_ok)
    throw std::runtime_error(std::string(caller) +
                             ": quadrature failed to reach tolerance");
  return outer.value / M_PI;
}

}  // namespace

std::complex<double> hs_reconstruct(const AlmostAnalyticExtension& ext,
                                    double lambda, double tol) {
  auto resolvent = [lambda](double x, double y) {
    return 1.0 / std::complex<double>(lambda - x, -y);
  };
  // the raw integral evaluates to f(lambda) - i H[f](lambda); flip the
  // orientation so the imaginary part is the Hilbert transform in the
  // -i sgn(k) multiplier convention
  return std::conj(
      hs_double_integral(ext, resolvent, {lambda}, tol, "hs_reconstruct"));
}

double hs_linear_statistic(const Spectrum& s, const MesoFrame& frame,
                           const AlmostAnalyticExtension& ext, double tol) {
  const HsDomain dom = integration_domain(ext);
  // rescaled eigenvalues; only those near the window produce pole splits
  std::vector<double> xs(s.eigenvalues.size());
  for (std::size_t j = 0; j < xs.size(); ++j)
    xs[j] = frame.d_n * (frame.energy - s.eigenvalues[j]);
  std::vector<double> splits;
  for (const double x : xs)
    if (x > dom.x_lo - 0.5 && x < dom.x_hi + 0.5) splits.push_back(x);
  std::sort(splits.begin(), splits.end());

  auto resolvent = [&xs](double x, double y) {
    std::complex<double> acc{0.0, 0.0};
    const std::complex<double> w(x, y);
    for (const double xj : xs) acc += 1.0 / (xj - w);
    return acc;
  };
  return hs_double_integral(ext, resolvent, splits, tol, "hs_linear_statistic")
      .real();
}

}  // namespace meso
