#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hardedge/config.hpp"
#include "hardedge/experiment.hpp"
#include "hardedge/figures.hpp"

using namespace hardedge;

namespace {

std::filesystem::path scratch(const std::string& name) {
  const std::filesystem::path dir = std::filesystem::temp_directory_path() / ("hardedge_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

ExperimentConfig basic(std::size_t n, AtomDistribution atom, Statistic statistic, std::size_t trials,
                       std::uint64_t seed) {
  ExperimentConfig config;
  config.ensemble = square_ensemble(n, std::move(atom));
  config.statistic = statistic;
  config.trials = trials;
  config.master_seed = seed;
  return config;
}

}  // namespace

TEST_CASE("configuration validation and JSON") {
  ExperimentConfig config = basic(20, AtomDistribution::bernoulli(), HardEdgeK{3}, 50, 7);
  config.reference_law = "edelman-real";
  CHECK_NOTHROW(config.validate());

  const ExperimentConfig back = config_from_json(config_to_json(config));
  CHECK(config_to_json(back) == config_to_json(config));
  CHECK(std::get<HardEdgeK>(back.statistic).k == 3);
  CHECK(back.ensemble.atom_name() == "bernoulli");
  CHECK(back.master_seed == 7);

  const nlohmann::json text = nlohmann::json::parse(R"({
    "ensemble": {"m": 30, "n": 32, "plan": "iid", "atom": "cgauss", "seed": 3, "l": 2},
    "statistic": "sqrt_sigma_min", "trials": 10, "reference_law": "edelman-complex"})");
  const ExperimentConfig parsed = config_from_json(text);
  CHECK(parsed.ensemble.dummy_rows == 2);
  CHECK(parsed.ensemble.field() == Field::Complex);
  CHECK(std::holds_alternative<SqrtSigmaMin>(parsed.statistic));

  const nlohmann::json grid = nlohmann::json::parse(R"({
    "ensemble": {"m": 10, "n": 10, "plan": "grid4", "seed": 1},
    "statistic": {"kind": "small_count", "c": 0.2}, "trials": 5})");
  const ExperimentConfig g = config_from_json(grid);
  CHECK(g.ensemble.plan_name() == "grid4");
  CHECK(std::get<SmallCount>(g.statistic).c == 0.2);
  CHECK(config_from_json(config_to_json(g)).ensemble.plan_name() == "grid4");

  ExperimentConfig bad = config;
  bad.trials = 0;
  CHECK_THROWS(bad.validate());
  bad = config;
  bad.statistic = HardEdgeK{21};
  CHECK_THROWS(bad.validate());
  bad = config;
  bad.reference_law = "no-such-law";
  CHECK_THROWS(bad.validate());
  CHECK_THROWS(config_from_json(nlohmann::json::parse(R"({"ensemble": {"m": 3, "n": 2}, "trials": 1})")));

  const std::filesystem::path dir = scratch("config");
  save_config(config, dir / "c.json");
  CHECK(config_to_json(load_config(dir / "c.json")) == config_to_json(config));
}

TEST_CASE("single-trial experiment") {
  const ExperimentResult r = run_experiment(basic(10, AtomDistribution::real_gaussian(), SqrtSigmaMin{}, 1, 1));
  REQUIRE(r.samples.size() == 1);
  const double x = r.samples[0][0];
  CHECK(r.ecdf(x - 1e-12) == 0.0);
  CHECK(r.ecdf(x) == 1.0);
  CHECK(r.trial_indices == std::vector<std::size_t>{0});
}

TEST_CASE("statistics agree on the same draws") {
  const ExperimentResult k = run_experiment(basic(30, AtomDistribution::bernoulli(), HardEdgeK{2}, 40, 2));
  const ExperimentResult s = run_experiment(basic(30, AtomDistribution::bernoulli(), SqrtSigmaMin{}, 40, 2));
  REQUIRE(k.trial_indices == s.trial_indices);
  for (std::size_t t = 0; t < k.samples.size(); ++t) {
    CHECK(k.samples[t][0] == doctest::Approx(s.samples[t][0] * s.samples[t][0]).epsilon(1e-12));
    CHECK(k.samples[t][0] <= k.samples[t][1]);
  }
  CHECK(k.component(1).size() == 40);
  CHECK_THROWS(k.component(2));
}

TEST_CASE("singular trials are excluded") {
  const ExperimentResult tiny = run_experiment(basic(2, AtomDistribution::bernoulli(), SqrtSigmaMin{}, 400, 3));
  // A 2 x 2 sign matrix is singular with probability 1/2.
  CHECK(tiny.excluded_singular_trials > 120);
  CHECK(tiny.excluded_singular_trials < 280);
  CHECK(tiny.samples.size() + tiny.excluded_singular_trials == 400);

  const ExperimentResult n50 = run_experiment(basic(50, AtomDistribution::bernoulli(), SqrtSigmaMin{}, 2000, 4));
  CHECK(static_cast<double>(n50.excluded_singular_trials) / 2000 <= 0.001);
}

TEST_CASE("goodness of fit against the limit law") {
  ExperimentConfig config = basic(40, AtomDistribution::real_gaussian(), SqrtSigmaMin{}, 1000, 5);
  config.reference_law = "edelman-real-sqrt";
  const ExperimentResult r = run_experiment(config);
  REQUIRE(r.gof);
  CHECK(r.gof->ks <= 0.06);
  CHECK(r.gof->levy <= r.gof->ks + 1e-4);
  CHECK(r.gof->residuals.size() == 50);

  ExperimentConfig tau = basic(30, AtomDistribution::complex_gaussian(), ConditionTau{}, 1000, 6);
  tau.reference_law = "edelman-complex";
  CHECK(run_experiment(tau).gof->ks <= 0.08);
}

TEST_CASE("other statistics") {
  const ExperimentResult d = run_experiment(basic(20, AtomDistribution::real_gaussian(), DistanceD1{}, 50, 8));
  CHECK(d.samples.size() == 50);
  const ExperimentResult c = run_experiment(basic(100, AtomDistribution::real_gaussian(), SmallCount{0.1}, 5, 9));
  for (const auto& v : c.samples) CHECK(v[0] >= 1.0);
  const ExperimentResult p = run_experiment(basic(30, AtomDistribution::real_gaussian(), PipelineSigmaS{5}, 20, 10));
  for (const auto& v : p.samples) CHECK(v[0] > 0.0);
  ExperimentConfig rect;
  rect.ensemble = EnsembleSpec{18, 20, AtomDistribution::real_gaussian(), 2};
  rect.statistic = HardEdgeK{1};
  rect.trials = 20;
  CHECK(run_experiment(rect).samples.size() == 20);
}

TEST_CASE("outputs do not depend on the worker count") {
  ExperimentConfig config = basic(20, AtomDistribution::bernoulli(), HardEdgeK{2}, 200, 11);
  config.reference_law = "edelman-real";
  const std::filesystem::path one = scratch("w1");
  const std::filesystem::path four = scratch("w4");
  write_experiment_outputs(run_experiment(config, 1), one);
  write_experiment_outputs(run_experiment(config, 4), four);
  for (const char* file : {"samples.csv", "ecdf.csv", "report.json"}) {
    CAPTURE(file);
    CHECK(slurp(one / file) == slurp(four / file));
  }
  const std::string samples = slurp(one / "samples.csv");
  CHECK(samples.rfind("trial,value1,value2\n", 0) == 0);
  CHECK(slurp(one / "ecdf.csv").rfind("t,value\n", 0) == 0);
  const nlohmann::json report = nlohmann::json::parse(slurp(one / "report.json"));
  CHECK(report.contains("gof"));
}

TEST_CASE("pipeline statistic needs s <= n") {
  ExperimentConfig config = basic(3, AtomDistribution::real_gaussian(), PipelineSigmaS{4}, 3, 12);
  CHECK_THROWS(config.validate());
}

TEST_CASE("Spielman-Teng scan") {
  CHECK_THROWS(spielman_teng_scan(AtomDistribution::bernoulli(), 20, 0, spielman_teng_grid(), 1, 1));
  const std::vector<double> grid = spielman_teng_grid();
  CHECK(grid.size() == 20);
  CHECK(grid.front() == doctest::Approx(0.05));
  CHECK(grid.back() == doctest::Approx(1.0));
  const SpielmanTengReport r = spielman_teng_scan(AtomDistribution::real_gaussian(), 30, 2000, grid, 13, 1);
  CHECK(r.holds);
  CHECK(r.violations == 0);
  CHECK(r.max_taylor_gap <= 0.04);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(r.upper_band[i] == doctest::Approx(grid[i] + 3 * std::sqrt(grid[i] * (1 - grid[i]) / 2000)));
  }
}

TEST_CASE("spectral distribution against Marchenko-Pastur") {
  const GoFReport g = esd_vs_mp(AtomDistribution::real_gaussian(), 200, RngStream{14, 0});
  CHECK(g.ks <= 0.1);
  CHECK(g.notes.empty());
  const GoFReport small = esd_vs_mp(AtomDistribution::bernoulli(), 1, RngStream{15, 0});
  CHECK_FALSE(small.notes.empty());
}

TEST_CASE("figures") {
  FigureOptions options;
  options.n = 12;
  options.trials = 60;
  for (int k = 1; k <= 7; ++k) {
    CAPTURE(k);
    const FigureData f = reproduce_figure(k, options);
    CHECK(f.number == k);
    CHECK_FALSE(f.title.empty());
    CHECK(f.curves.size() + f.surfaces.size() >= 2);
    for (const Curve& c : f.curves) {
      CHECK(c.t.size() == c.value.size());
      for (double v : c.value) CHECK(std::isfinite(v));
    }
    for (const Surface& s : f.surfaces) CHECK(s.value.size() == s.x.size() * s.y.size());
  }
  CHECK_THROWS(reproduce_figure(0, options));
  CHECK_THROWS(reproduce_figure(8, options));

  const std::filesystem::path dir = scratch("figure");
  const auto paths = write_figure(reproduce_figure(3, options), dir);
  REQUIRE_FALSE(paths.empty());
  CHECK(slurp(paths.front()).rfind("x,y,value\n", 0) == 0);
  const auto curves = write_figure(reproduce_figure(1, options), dir);
  CHECK(slurp(curves.front()).rfind("t,value\n", 0) == 0);
}
