// Monte Carlo laboratory for mesoscopic spectral statistics of Wigner
// matrices: ensemble sampling, resolvent/linear-statistic experiments with
// error bars against the limiting Gaussian predictions, and samplers for
// the limit processes themselves.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "meso/harness.hpp"
#include "meso/hscalc.hpp"
#include "meso/io.hpp"
#include "meso/sobolev.hpp"

namespace {

using meso::ExperimentConfig;

struct GlobalArgs {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
  std::string out_dir = "out";
};

ExperimentConfig load_config(const GlobalArgs& g, meso::Experiment experiment,
                             nlohmann::json* extras = nullptr) {
  ExperimentConfig c;
  c.experiment = experiment;
  if (!g.config_path.empty()) {
    std::ifstream in(g.config_path);
    if (!in) throw std::runtime_error("cannot read config: " + g.config_path);
    nlohmann::json j;
    in >> j;
    c = meso::config_from_json(j);
    c.experiment = experiment;
    if (extras) *extras = j;
  }
  if (g.seed) c.master_seed = *g.seed;
  if (g.workers) c.workers = *g.workers;
  return c;
}

meso::TestFunction pick_function(const std::string& name) {
  if (name == "cauchy" || name == "cauchy-real")
    return meso::corpus::cauchy_real(0.0, 1.0);
  if (name == "cauchy-imag") return meso::corpus::cauchy_imag(0.0, 1.0);
  if (name == "gaussian") return meso::corpus::gaussian_bump();
  if (name == "cosine-bump" || name == "bump")
    return meso::corpus::cosine_bump();
  if (name == "poly-bump") return meso::corpus::poly_bump();
  throw std::runtime_error("unknown test function: " + name);
}

int finish(const meso::EstimateReport& report, const GlobalArgs& g) {
  meso::write_report(report, g.out_dir);
  std::cout << report.full_json().dump(2) << "\n";
  const bool gated_any = [&] {
    for (const auto& e : report.entries)
      if (e.gated) return true;
    return false;
  }();
  if (gated_any && !report.pass(3.0)) {
    std::cerr << "statistical rejection: max |z| = " << report.max_abs_z()
              << "\n";
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mesoscopic Wigner statistics laboratory"};
  app.require_subcommand(1);

  GlobalArgs g;
  app.add_option("--config", g.config_path, "JSON experiment config");
  app.add_option("--seed", g.seed, "master seed override");
  app.add_option("--workers", g.workers, "worker thread count override");
  app.add_option("--out", g.out_dir, "output directory");

  // sample
  auto* sample = app.add_subcommand("sample", "draw spectra and persist them");
  int sample_count = 1;
  sample->add_option("--count", sample_count, "number of samples");

  // cov-v
  auto* covv = app.add_subcommand(
      "cov-v", "covariance of the centered resolvent-trace process");

  // var-meso
  auto* varmeso = app.add_subcommand(
      "var-meso", "variance of a mesoscopic linear statistic");
  std::string fn_name = "cauchy";
  varmeso->add_option("--function", fn_name, "test function");

  // universality
  auto* univ = app.add_subcommand(
      "universality", "fourth-moment comparison: GUE vs four-phase entries");

  // normality
  auto* norm = app.add_subcommand(
      "normality", "moment-based Gaussianity diagnostics");
  std::string norm_fn = "cosine-bump";
  norm->add_option("--function", norm_fn, "test function");

  // log-process
  auto* logp = app.add_subcommand(
      "log-process", "log-characteristic-polynomial increments");
  std::vector<double> taus = {0.0, 0.5, 1.0, 2.0};
  double lp_eta = 1.0;
  logp->add_option("--taus", taus, "tau grid (must start at 0)");
  logp->add_option("--eta", lp_eta, "regularization eta");

  // sine-demo
  auto* sine = app.add_subcommand(
      "sine-demo", "microscopic-scale covariance against the sine kernel");

  // semicircle-ks
  auto* ks = app.add_subcommand(
      "semicircle-ks", "KS distance to the semicircle law");

  // gp-sample
  auto* gp = app.add_subcommand(
      "gp-sample", "sample the limiting Gaussian process");
  double hurst = 0.0;
  int truncation = 0;
  int paths = 1000;
  bool use_cholesky = false;
  gp->add_option("--hurst", hurst, "Hurst index (< 1)");
  gp->add_option("--truncation", truncation,
                 "series truncation (0 = automatic)");
  gp->add_option("--paths", paths, "number of paths");
  gp->add_flag("--cholesky", use_cholesky, "kernel-Cholesky route");

  // hs-verify
  auto* hsv = app.add_subcommand(
      "hs-verify", "resolvent-calculus reconstruction checks");
  int hs_points = 25;
  hsv->add_option("--points", hs_points, "lambda grid size");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sample) {
      ExperimentConfig c = load_config(g, meso::Experiment::SemicircleKS);
      for (int m = 0; m < sample_count; ++m) {
        meso::EnsembleSpec spec;
        spec.kind = c.kind;
        spec.n = c.n;
        spec.seed = c.master_seed;
        spec.sample_index = static_cast<std::uint64_t>(m);
        const meso::Spectrum s = meso::compute_spectrum(meso::sample_wigner(spec));
        meso::write_spectrum(s, g.out_dir);
        std::cout << meso::spectrum_basename(spec) << ": n=" << s.n
                  << " range [" << s.eigenvalues.front() << ", "
                  << s.eigenvalues.back() << "]\n";
      }
      return 0;
    }
    if (*covv)
      return finish(meso::run_cov_v(load_config(g, meso::Experiment::CovV)), g);
    if (*varmeso)
      return finish(meso::run_var_meso(load_config(g, meso::Experiment::VarMeso),
                                       pick_function(fn_name)),
                    g);
    if (*univ)
      return finish(
          meso::run_universality(load_config(g, meso::Experiment::Universality)),
          g);
    if (*norm) {
      ExperimentConfig c = load_config(g, meso::Experiment::Normality);
      if (c.samples < 500) c.samples = 500;
      return finish(meso::run_normality(c, pick_function(norm_fn)), g);
    }
    if (*logp)
      return finish(
          meso::run_log_process(load_config(g, meso::Experiment::LogProcess),
                                taus, lp_eta),
          g);
    if (*sine) {
      ExperimentConfig c = load_config(g, meso::Experiment::SineKernel);
      return finish(meso::run_sine_kernel_demo(c), g);
    }
    if (*ks)
      return finish(
          meso::run_semicircle_ks(load_config(g, meso::Experiment::SemicircleKS)),
          g);
    if (*gp) {
      ExperimentConfig c = load_config(g, meso::Experiment::CovV);
      return finish(run_gp_sample(c, meso::HurstParam{hurst}, truncation,
                                  paths, !use_cholesky),
                    g);
    }
    if (*hsv) {
      // reconstruction identity on the compact C^2 corpus
      const meso::TestFunction corpus[] = {meso::corpus::poly_bump(),
                                           meso::corpus::cos4_bump(),
                                           meso::corpus::mollifier()};
      meso::SobolevOptions sopts;
      sopts.half_width = 64.0;
      sopts.log2_len = 16;
      bool all_ok = true;
      for (const auto& f : corpus) {
        meso::AlmostAnalyticExtension ext{f, meso::CutoffProfile{}};
        const meso::GridFunction grid =
            meso::sample_on_grid(f, sopts.half_width, std::size_t{1} << sopts.log2_len);
        const meso::GridFunction hf = meso::hilbert_transform(grid);
        double worst_re = 0.0, worst_im = 0.0;
        for (int i = 0; i < hs_points; ++i) {
          const double lambda = -1.5 + 3.0 * i / (hs_points - 1.0);
          const std::complex<double> rec = meso::hs_reconstruct(ext, lambda);
          worst_re = std::max(worst_re, std::abs(rec.real() - f.f(lambda)));
          const std::size_t j = static_cast<std::size_t>(
              std::lround((lambda - hf.x0) / hf.dx));
          worst_im =
              std::max(worst_im, std::abs(rec.imag() - hf.values[j].real()));
        }
        const bool ok = worst_re <= 1e-3 && worst_im <= 2e-3;
        all_ok = all_ok && ok;
        std::cout << (ok ? "[ok]  " : "[FAIL] ") << f.name
                  << ": max |Re - f| = " << worst_re
                  << ", max |Im - H[f]| = " << worst_im << "\n";
      }
      return all_ok ? 0 : 2;
    }
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
  return 0;
}
