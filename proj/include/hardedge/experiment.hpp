#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hardedge/ecdf.hpp"
#include "hardedge/ensembles.hpp"
#include "hardedge/limitlaws.hpp"

namespace hardedge {

/// (n sigma_{m}^2, ..., n sigma_{m-k+1}^2) with m = min(rows, cols).
struct HardEdgeK {
  std::size_t k = 1;
};
/// sqrt(n) sigma_min.
struct SqrtSigmaMin {};
/// (2 n / kappa)^2.
struct ConditionTau {};
/// dist(X_1, span(X_2..X_n)).
struct DistanceD1 {};
/// #{i : sigma_i <= n^{1/2 - c}}.
struct SmallCount {
  double c = 0.1;
};
/// s sigma_s(M_{s,n})^2.
struct PipelineSigmaS {
  std::size_t s = 1;
};
using Statistic = std::variant<HardEdgeK, SqrtSigmaMin, ConditionTau, DistanceD1, SmallCount, PipelineSigmaS>;

std::string statistic_name(const Statistic& statistic);
/// Number of values each trial produces.
std::size_t statistic_dimension(const Statistic& statistic);

struct ExperimentConfig {
  EnsembleSpec ensemble;
  Statistic statistic = HardEdgeK{};
  std::size_t trials = 1000;
  std::uint64_t master_seed = 0;
  std::optional<std::string> reference_law;
  /// Directory for samples.csv, ecdf.csv and report.json; empty for none.
  std::string output_dir;

  /// Throws std::invalid_argument on an inconsistent configuration.
  void validate() const;
};

struct GoFReport {
  double ks = 0.0;
  double levy = 0.0;
  std::size_t excluded_singular_trials = 0;
  /// (t, ECDF(t) - law(t)) on an evenly spaced grid.
  std::vector<std::pair<double, double>> residuals;
  std::vector<std::string> notes;
};

struct ExperimentResult {
  ExperimentConfig config;
  /// Per included trial, in trial order.
  std::vector<std::vector<double>> samples;
  std::vector<std::size_t> trial_indices;
  std::size_t excluded_singular_trials = 0;
  /// Law of the first component.
  EmpiricalCDF ecdf;
  std::optional<GoFReport> gof;

  std::vector<double> component(std::size_t index) const;
};

/// Trials whose matrix has sigma_min <= 1e-12 sigma_1 are counted as singular
/// and excluded.
inline constexpr double kSingularThreshold = 1e-12;

/// Stream of trial t.
RngStream trial_stream(std::uint64_t master_seed, std::size_t trial);

/// Runs config.trials independent trials (trial t on trial_stream(seed, t))
/// on up to `workers` threads. The result does not depend on `workers`.
/// Failures are rethrown with the lowest failing trial index in the message.
ExperimentResult run_experiment(const ExperimentConfig& config, std::size_t workers);
ExperimentResult run_experiment(const ExperimentConfig& config);

/// KS and Levy distance of `ecdf` to `law`, with residuals on `grid_points`
/// evenly spaced points of [0, upper].
GoFReport goodness_of_fit(const EmpiricalCDF& ecdf, const LimitLaw& law, double upper,
                          std::size_t grid_points = 50);

/// samples.csv ("trial,value" or "trial,value1,..."), ecdf.csv ("t,value") and
/// report.json in `dir`. Numbers use 17 significant digits.
void write_experiment_outputs(const ExperimentResult& result, const std::filesystem::path& dir);

struct SpielmanTengReport {
  std::size_t trials = 0;
  std::size_t excluded_singular_trials = 0;
  std::vector<double> grid;
  std::vector<double> ecdf;
  /// t + 3 sqrt(t (1 - t) / trials).
  std::vector<double> upper_band;
  std::size_t violations = 0;
  /// max |ECDF(t) - (t - t^3 / 3)| over grid points t <= 0.5.
  double max_taylor_gap = 0.0;
  bool holds = false;  // violations == 0
};

/// Checks P(sqrt(n) sigma_n <= t) <= t on the grid from `trials` n x n matrices.
SpielmanTengReport spielman_teng_scan(const AtomDistribution& atom, std::size_t n, std::size_t trials,
                                      const std::vector<double>& grid, std::uint64_t master_seed,
                                      std::size_t workers);

/// Grid {0.05, 0.10, ..., 1.0}.
std::vector<double> spielman_teng_grid();

/// Smallest n accepted by esd_vs_mp without a warning note.
inline constexpr std::size_t kMinimumEsdSize = 10;

/// One n x n draw; KS and Levy distance of the ECDF of sigma_i^2 / n to the
/// Marchenko-Pastur law.
GoFReport esd_vs_mp(const AtomDistribution& atom, std::size_t n, const RngStream& rng);

}  // namespace hardedge
