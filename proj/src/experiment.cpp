#include "hardedge/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "hardedge/config.hpp"
#include "hardedge/parallel.hpp"
#include "hardedge/reduction.hpp"
#include "hardedge/spectral.hpp"

namespace hardedge {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string format_double(double x) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", x);
  return buffer;
}

struct TrialOutcome {
  std::vector<double> values;
  bool excluded = false;
};

std::vector<double> evaluate_statistic(const Statistic& statistic, const Matrix& a,
                                       const SingularSpectrum& spectrum) {
  const double n = static_cast<double>(a.cols());
  const std::size_t m = spectrum.values.size();
  return std::visit(
      Overloaded{[&](const HardEdgeK& s) {
                   std::vector<double> out(s.k);
                   for (std::size_t i = 0; i < s.k; ++i) {
                     const double sigma = spectrum.values[m - 1 - i];
                     out[i] = n * sigma * sigma;
                   }
                   return out;
                 },
                 [&](const SqrtSigmaMin&) { return std::vector<double>{std::sqrt(n) * spectrum.smallest()}; },
                 [&](const ConditionTau&) {
                   const double ratio = 2.0 * n / condition_number(spectrum);
                   return std::vector<double>{ratio * ratio};
                 },
                 [&](const DistanceD1&) { return std::vector<double>{distance_to_hyperplane(a, 0)}; },
                 [&](const SmallCount& s) {
                   const double threshold = std::pow(n, 0.5 - s.c);
                   const auto count = std::count_if(spectrum.values.begin(), spectrum.values.end(),
                                                    [&](double sigma) { return sigma <= threshold; });
                   return std::vector<double>{static_cast<double>(count)};
                 },
                 [&](const PipelineSigmaS& s) { return std::vector<double>{pipeline_sigma_statistic(a, s.s)}; }},
      statistic);
}

TrialOutcome run_trial(const ExperimentConfig& config, std::size_t t) {
  try {
    const MatrixSample sample = sample_matrix(config.ensemble, trial_stream(config.master_seed, t));
    const SingularSpectrum spectrum = singular_values(sample.matrix);
    if (!(spectrum.smallest() > kSingularThreshold * spectrum.largest())) return {{}, true};
    try {
      return {evaluate_statistic(config.statistic, sample.matrix, spectrum), false};
    } catch (const SingularMatrixError&) {
      return {{}, true};
    } catch (const RankDeficiencyError&) {
      return {{}, true};
    }
  } catch (const std::exception& e) {
    throw std::runtime_error("trial " + std::to_string(t) + ": " + e.what());
  }
}

}  // namespace

std::string statistic_name(const Statistic& statistic) {
  return std::visit(Overloaded{[](const HardEdgeK& s) { return "hard_edge_k(" + std::to_string(s.k) + ")"; },
                               [](const SqrtSigmaMin&) -> std::string { return "sqrt_sigma_min"; },
                               [](const ConditionTau&) -> std::string { return "condition_tau"; },
                               [](const DistanceD1&) -> std::string { return "distance_d1"; },
                               [](const SmallCount& s) { return "small_count(" + format_double(s.c) + ")"; },
                               [](const PipelineSigmaS& s) {
                                 return "pipeline_sigma_s(" + std::to_string(s.s) + ")";
                               }},
                    statistic);
}

std::size_t statistic_dimension(const Statistic& statistic) {
  if (const auto* k = std::get_if<HardEdgeK>(&statistic)) return k->k;
  return 1;
}

void ExperimentConfig::validate() const {
  ensemble.validate();
  if (trials < 1) throw std::invalid_argument("ExperimentConfig: trials must be at least 1");
  const std::size_t m = ensemble.rows;
  const std::size_t n = ensemble.cols;
  const bool square = m == n;
  std::visit(Overloaded{[&](const HardEdgeK& s) {
                          if (s.k < 1 || s.k > m) throw std::invalid_argument("ExperimentConfig: need 1 <= k <= m");
                        },
                        [](const SqrtSigmaMin&) {},
                        [&](const ConditionTau&) {
                          if (!square) throw std::invalid_argument("ExperimentConfig: condition_tau needs m == n");
                        },
                        [&](const DistanceD1&) {
                          if (!square) throw std::invalid_argument("ExperimentConfig: distance_d1 needs m == n");
                        },
                        [](const SmallCount& s) {
                          if (!(s.c > 0.0 && s.c < 0.5)) {
                            throw std::invalid_argument("ExperimentConfig: small_count needs 0 < c < 1/2");
                          }
                        },
                        [&](const PipelineSigmaS& s) {
                          if (!square) throw std::invalid_argument("ExperimentConfig: pipeline_sigma_s needs m == n");
                          if (s.s < 1 || s.s > n) throw std::invalid_argument("ExperimentConfig: need 1 <= s <= n");
                        }},
             statistic);
  if (reference_law) law_by_name(*reference_law);
}

std::vector<double> ExperimentResult::component(std::size_t index) const {
  std::vector<double> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.push_back(s.at(index));
  return out;
}

RngStream trial_stream(std::uint64_t master_seed, std::size_t trial) {
  return RngStream{master_seed, static_cast<std::uint64_t>(trial)};
}

ExperimentResult run_experiment(const ExperimentConfig& config, std::size_t workers) {
  config.validate();
  std::vector<TrialOutcome> outcomes =
      parallel_map(config.trials, workers, [&](std::size_t t) { return run_trial(config, t); });

  ExperimentResult result;
  result.config = config;
  for (std::size_t t = 0; t < outcomes.size(); ++t) {
    if (outcomes[t].excluded) {
      ++result.excluded_singular_trials;
      continue;
    }
    result.samples.push_back(std::move(outcomes[t].values));
    result.trial_indices.push_back(t);
  }
  result.ecdf = EmpiricalCDF(result.component(0));
  if (config.reference_law && !result.ecdf.empty()) {
    const LimitLaw law = law_by_name(*config.reference_law);
    result.gof = goodness_of_fit(result.ecdf, law, result.ecdf.quantile(0.99));
    result.gof->excluded_singular_trials = result.excluded_singular_trials;
  }
  return result;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  return run_experiment(config, default_worker_count());
}

GoFReport goodness_of_fit(const EmpiricalCDF& ecdf, const LimitLaw& law, double upper, std::size_t grid_points) {
  GoFReport report;
  report.ks = ks_distance(ecdf, law.cdf);
  report.levy = levy_distance(ecdf, law.cdf);
  if (grid_points >= 2 && upper > 0.0) {
    for (std::size_t i = 0; i < grid_points; ++i) {
      const double t = upper * static_cast<double>(i) / static_cast<double>(grid_points - 1);
      report.residuals.emplace_back(t, ecdf(t) - law.cdf(t));
    }
  }
  return report;
}

void write_experiment_outputs(const ExperimentResult& result, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream out(dir / "samples.csv");
    const std::size_t dims = statistic_dimension(result.config.statistic);
    out << "trial";
    if (dims == 1) {
      out << ",value";
    } else {
      for (std::size_t d = 1; d <= dims; ++d) out << ",value" << d;
    }
    out << '\n';
    for (std::size_t i = 0; i < result.samples.size(); ++i) {
      out << result.trial_indices[i];
      for (double v : result.samples[i]) out << ',' << format_double(v);
      out << '\n';
    }
  }
  {
    std::ofstream out(dir / "ecdf.csv");
    out << "t,value\n";
    const auto& xs = result.ecdf.sorted_samples();
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (i + 1 < xs.size() && xs[i + 1] == xs[i]) continue;
      out << format_double(xs[i]) << ',' << format_double(result.ecdf(xs[i])) << '\n';
    }
  }
  nlohmann::json report{{"config", config_to_json(result.config)},
                        {"statistic", statistic_name(result.config.statistic)},
                        {"included_trials", result.samples.size()},
                        {"excluded_singular_trials", result.excluded_singular_trials}};
  if (!result.ecdf.empty()) {
    const std::vector<double> first = result.component(0);
    report["mean"] = mean(first);
    report["median"] = median(first);
  }
  if (result.gof) {
    nlohmann::json residuals = nlohmann::json::array();
    for (const auto& [t, r] : result.gof->residuals) residuals.push_back({t, r});
    report["gof"] = {{"law", *result.config.reference_law},
                     {"ks", result.gof->ks},
                     {"levy", result.gof->levy},
                     {"residuals", residuals}};
  }
  std::ofstream(dir / "report.json") << report.dump(2) << '\n';
}

std::vector<double> spielman_teng_grid() {
  std::vector<double> grid;
  for (int i = 1; i <= 20; ++i) grid.push_back(0.05 * i);
  return grid;
}

SpielmanTengReport spielman_teng_scan(const AtomDistribution& atom, std::size_t n, std::size_t trials,
                                      const std::vector<double>& grid, std::uint64_t master_seed,
                                      std::size_t workers) {
  if (trials == 0) throw std::invalid_argument("spielman_teng_scan: trials must be positive");
  ExperimentConfig config;
  config.ensemble = square_ensemble(n, atom);
  config.statistic = SqrtSigmaMin{};
  config.trials = trials;
  config.master_seed = master_seed;
  const ExperimentResult result = run_experiment(config, workers);

  SpielmanTengReport report;
  report.trials = trials;
  report.excluded_singular_trials = result.excluded_singular_trials;
  report.grid = grid;
  const double count = static_cast<double>(result.samples.size());
  for (double t : grid) {
    const double f = result.ecdf(t);
    const double band = t + 3.0 * std::sqrt(std::max(0.0, t * (1.0 - t)) / count);
    report.ecdf.push_back(f);
    report.upper_band.push_back(band);
    if (f > band) ++report.violations;
    if (t <= 0.5 + 1e-12) report.max_taylor_gap = std::max(report.max_taylor_gap, std::abs(f - (t - t * t * t / 3.0)));
  }
  report.holds = report.violations == 0;
  return report;
}

GoFReport esd_vs_mp(const AtomDistribution& atom, std::size_t n, const RngStream& rng) {
  if (n == 0) throw std::invalid_argument("esd_vs_mp: n must be positive");
  const Matrix a = sample_matrix(square_ensemble(n, atom), rng).matrix;
  const SingularSpectrum spectrum = singular_values(a);
  std::vector<double> scaled;
  for (double sigma : spectrum.values) scaled.push_back(sigma * sigma / static_cast<double>(n));
  GoFReport report = goodness_of_fit(EmpiricalCDF(std::move(scaled)), law_by_name("marchenko-pastur"), 4.0);
  if (n < kMinimumEsdSize) report.notes.push_back("n below minimum size " + std::to_string(kMinimumEsdSize));
  return report;
}

}  // namespace hardedge
