#pragma once

#include <array>
#include <complex>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "meso/ensembles.hpp"
#include "meso/processes.hpp"
#include "meso/spectral.hpp"
#include "meso/test_function.hpp"

namespace meso {

enum class Experiment {
  CovV,
  VarMeso,
  Universality,
  Normality,
  LogProcess,
  SineKernel,
  SemicircleKS
};

std::string to_string(Experiment e);
Experiment experiment_from_string(const std::string& name);

struct ExperimentConfig {
  Experiment experiment = Experiment::CovV;
  EnsembleKind kind = EnsembleKind::GUE;
  int n = 1000;
  std::uint64_t master_seed = 1;
  double energy = 0.0;
  double gamma = 0.25;
  double d_n_override = 0.0;  // 0 means d_N = n^gamma
  std::vector<MesoPoint> grid = {{0.0, 1.0}};
  int samples = 400;
  int workers = 1;

  MesoFrame frame() const;
};

ExperimentConfig config_from_json(const nlohmann::json& j);

struct EstimateEntry {
  std::string name;
  std::complex<double> estimate{0.0, 0.0};
  std::complex<double> target{0.0, 0.0};
  double se_re = 0.0;
  double se_im = 0.0;
  std::string formula;  // provenance of the target value
  bool complex_valued = false;
  bool gated = true;  // exploratory entries are excluded from pass/fail

  double z() const;  // worst component z-score
};

struct DataTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

struct EstimateReport {
  std::string experiment;
  nlohmann::ordered_json config_echo;
  std::vector<EstimateEntry> entries;
  std::vector<std::string> flags;
  nlohmann::ordered_json info;  // experiment-specific extras
  DataTable raw;                // per-sample values, written to data.csv
  std::map<std::string, DataTable> plots;  // plotdata_*.csv
  double runtime_seconds = 0.0;
  double per_sample_seconds = 0.0;

  double max_abs_z() const;
  bool pass(double z_max = 3.0) const;
  bool has_flag(const std::string& f) const;

  nlohmann::ordered_json core_json() const;  // excludes timing
  nlohmann::ordered_json full_json() const;
  std::string canonical_core() const;
};

// Deterministic batch: spectrum m comes from sample_index = m; identical
// output for any worker count.
std::vector<Spectrum> sample_spectra(EnsembleKind kind, int n,
                                     std::uint64_t seed, int samples,
                                     int workers);

EstimateReport run_cov_v(const ExperimentConfig& config);
EstimateReport run_var_meso(const ExperimentConfig& config,
                            const TestFunction& f);
EstimateReport run_universality(const ExperimentConfig& config);
EstimateReport run_normality(const ExperimentConfig& config,
                             const TestFunction& f);
EstimateReport run_log_process(const ExperimentConfig& config,
                               const std::vector<double>& taus, double eta);
EstimateReport run_sine_kernel_demo(const ExperimentConfig& config);
EstimateReport run_semicircle_ks(const ExperimentConfig& config);

// GP sampler driver behind the `gp-sample` CLI verb.
EstimateReport run_gp_sample(const ExperimentConfig& config, HurstParam h,
                             int truncation, int paths, bool cayley_route);

}  // namespace meso
