#include <doctest.h>

#include <cmath>

#include "meso/harness.hpp"
#include "meso/io.hpp"

using namespace meso;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig c;
  c.kind = EnsembleKind::GUE;
  c.n = 100;
  c.master_seed = 555;
  c.energy = 0.0;
  c.gamma = 0.25;
  c.grid = {{0.0, 1.0}, {1.0, 1.0}};
  c.samples = 16;
  c.workers = 1;
  return c;
}

}  // namespace

TEST_CASE("cov-v report structure and determinism") {
  ExperimentConfig c = small_config();
  c.experiment = Experiment::CovV;
  const EstimateReport a = run_cov_v(c);
  CHECK(a.entries.size() == 6);  // 3 hermitian + 3 pseudo pairs
  CHECK(a.raw.rows.size() == 16);
  for (const auto& e : a.entries) {
    CHECK_FALSE(e.formula.empty());
    CHECK(std::isfinite(e.estimate.real()));
  }
  const EstimateReport b = run_cov_v(c);
  CHECK(a.canonical_core() == b.canonical_core());
  CHECK(a.raw.rows == b.raw.rows);
}

TEST_CASE("worker count does not change any reported bit") {
  ExperimentConfig c = small_config();
  c.experiment = Experiment::CovV;
  c.samples = 12;
  const EstimateReport w1 = run_cov_v(c);
  c.workers = 4;
  const EstimateReport w4 = run_cov_v(c);
  CHECK(w1.canonical_core() == w4.canonical_core());
  CHECK(w1.raw.rows == w4.raw.rows);
}

TEST_CASE("degenerate two-sample run is flagged with infinite SEs") {
  ExperimentConfig c = small_config();
  c.samples = 2;
  const EstimateReport r = run_cov_v(c);
  CHECK(r.has_flag("se_infinite"));
  CHECK(r.has_flag("degenerate_sample_size"));
  for (const auto& e : r.entries) CHECK(std::isinf(e.se_re));
  // z-scores degrade to 0, so the report still serializes and "passes"
  CHECK(r.pass());
}

TEST_CASE("universality report carries the fourth-moment lever") {
  ExperimentConfig c = small_config();
  c.experiment = Experiment::Universality;
  c.samples = 12;
  const EstimateReport r = run_universality(c);
  CHECK(r.info["beta"]["gue"].get<double>() == doctest::Approx(1.0));
  CHECK(r.info["beta"]["fourphase"].get<double>() == doctest::Approx(0.0));
  bool any_diff = false;
  for (const auto& e : r.entries)
    if (e.name.rfind("diff_", 0) == 0) any_diff = true;
  CHECK(any_diff);
}

TEST_CASE("normality flags constant data instead of dividing by zero") {
  ExperimentConfig c = small_config();
  c.experiment = Experiment::Normality;
  c.samples = 10;
  TestFunction zero;
  zero.name = "zero";
  zero.f = [](double) { return 0.0; };
  zero.df = [](double) { return 0.0; };
  const EstimateReport r = run_normality(c, zero);
  CHECK(r.has_flag("zero_variance:x"));
  // the V-statistics are still reported
  bool has_v = false;
  for (const auto& e : r.entries)
    if (e.name == "skew(re_v0)") has_v = true;
  CHECK(has_v);
}

TEST_CASE("log-process: pinned origin, adjudication, validation") {
  ExperimentConfig c = small_config();
  c.experiment = Experiment::LogProcess;
  c.samples = 12;
  const std::vector<double> taus = {0.0, 0.5, 1.0};
  const EstimateReport r = run_log_process(c, taus, 1.0);
  // W(0) = 0 for every sample: second raw column is identically zero
  for (const auto& row : r.raw.rows) CHECK(row[1] == 0.0);
  CHECK(r.info.contains("normalization_adjudication"));
  CHECK(r.entries.size() == 3);
  CHECK_THROWS_AS(run_log_process(c, {0.5, 1.0}, 1.0), std::invalid_argument);
}

TEST_CASE("semicircle-ks flags tiny matrices and stays deterministic") {
  ExperimentConfig c = small_config();
  c.experiment = Experiment::SemicircleKS;
  c.n = 1;
  c.samples = 3;
  const EstimateReport r = run_semicircle_ks(c);
  CHECK(r.has_flag("small_n_regime"));
  const EstimateReport r2 = run_semicircle_ks(c);
  CHECK(r.canonical_core() == r2.canonical_core());
}

TEST_CASE("sine demo is exploratory and reports an envelope verdict") {
  ExperimentConfig c = small_config();
  c.experiment = Experiment::SineKernel;
  c.n = 150;
  c.samples = 24;
  c.d_n_override = 150.0;
  c.grid.clear();  // default tau ladder
  const EstimateReport r = run_sine_kernel_demo(c);
  CHECK(r.has_flag("exploratory"));
  CHECK(r.pass());  // nothing is gated
  CHECK(r.plots.count("sine_kernel") == 1);
  CHECK(r.info["envelope"].contains("monotone_envelope"));
  // the theoretical curve hits 1 at dt = 0 and 0 at dt = 1
  const auto& rows = r.plots.at("sine_kernel").rows;
  CHECK(rows.front().back() == doctest::Approx(1.0));
  bool saw_zero = false;
  for (const auto& row : rows)
    if (row.front() == 1.0) {
      CHECK(row.back() == doctest::Approx(0.0));
      saw_zero = true;
    }
  CHECK(saw_zero);
}

TEST_CASE("gp-sample driver hits the kernel marginals") {
  ExperimentConfig c = small_config();
  c.grid = {{0.0, 1.0}, {1.0, 2.0}};
  const EstimateReport r = run_gp_sample(c, HurstParam{0.0}, 0, 20000, true);
  for (const auto& e : r.entries) CHECK(e.z() <= 4.0);
  const EstimateReport r2 = run_gp_sample(c, HurstParam{0.0}, 0, 20000, false);
  for (const auto& e : r2.entries) CHECK(e.z() <= 4.0);
}

TEST_CASE("experiment config json round trip") {
  nlohmann::json j = {
      {"experiment", "cov-v"},
      {"ensemble", {{"kind", "fourphase"}, {"n", 321}}},
      {"master_seed", 777},
      {"frame", {{"energy", 0.25}, {"gamma", 0.3}}},
      {"grid", {{0.0, 1.0}, {2.0, 0.5}}},
      {"samples", 55},
      {"workers", 3}};
  const ExperimentConfig c = config_from_json(j);
  CHECK(c.kind == EnsembleKind::FourPhase);
  CHECK(c.n == 321);
  CHECK(c.master_seed == 777);
  CHECK(c.energy == doctest::Approx(0.25));
  CHECK(c.grid.size() == 2);
  CHECK(c.grid[1].tau == doctest::Approx(2.0));
  CHECK(c.samples == 55);
  CHECK(c.workers == 3);
  const std::string kind_name = to_string(c.kind);
  CHECK(ensemble_kind_from_string(kind_name) == c.kind);
}
