// One PASS/FAIL line per acceptance criterion. Tolerances are fixed below.
// Usage: hardedge_acceptance [criterion ...]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <set>
#include <sstream>
#include <string>

#include "hardedge/cltframe.hpp"
#include "hardedge/ensembles.hpp"
#include "hardedge/experiment.hpp"
#include "hardedge/figures.hpp"
#include "hardedge/limitlaws.hpp"
#include "hardedge/parallel.hpp"
#include "hardedge/reduction.hpp"
#include "hardedge/spectral.hpp"
#include "hardedge/suites.hpp"

using namespace hardedge;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* format, auto... args) {
  char buffer[512];
  std::snprintf(buffer, sizeof buffer, format, args...);
  return buffer;
}

std::size_t workers() { return default_worker_count(); }

ExperimentConfig square(std::size_t n, const AtomDistribution& atom, Statistic statistic, std::size_t trials,
                        std::uint64_t seed, std::optional<std::string> law = std::nullopt) {
  ExperimentConfig config;
  config.ensemble = square_ensemble(n, atom);
  config.statistic = statistic;
  config.trials = trials;
  config.master_seed = seed;
  config.reference_law = std::move(law);
  return config;
}

std::string suite_detail(const SuiteReport& r) {
  return fmt("%zu instances, %zu failures, worst %.3g", r.instances, r.failures, r.worst_residual);
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Verdict exact_complex_law() {
  const auto start = std::chrono::steady_clock::now();
  const ExperimentResult r =
      run_experiment(square(50, AtomDistribution::complex_gaussian(), HardEdgeK{1}, 4000, 101, "edelman-complex"),
                     workers());
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const double ks = r.gof->ks;
  return {ks <= 0.035 && seconds <= 120.0, fmt("ks %.4f <= 0.035, %.1f s <= 120 s", ks, seconds)};
}

Verdict real_gaussian_limit() {
  const ExperimentResult r =
      run_experiment(square(100, AtomDistribution::real_gaussian(), HardEdgeK{1}, 2000, 102, "edelman-real"), workers());
  return {r.gof->ks <= 0.06, fmt("ks %.4f <= 0.06", r.gof->ks)};
}

Verdict universality() {
  const ExperimentResult b =
      run_experiment(square(100, AtomDistribution::bernoulli(), SqrtSigmaMin{}, 2000, 103), workers());
  const ExperimentResult g =
      run_experiment(square(100, AtomDistribution::real_gaussian(), SqrtSigmaMin{}, 2000, 104), workers());
  const double ks = ks_distance(b.ecdf, g.ecdf);
  const double levy = levy_distance(b.ecdf, g.ecdf);
  return {ks <= 0.07 && levy <= 0.05, fmt("two-sample ks %.4f <= 0.07, levy %.4f <= 0.05", ks, levy)};
}

Verdict spielman_teng() {
  const SpielmanTengReport r =
      spielman_teng_scan(AtomDistribution::bernoulli(), 100, 20000, spielman_teng_grid(), 105, workers());
  return {r.holds && r.max_taylor_gap <= 0.02,
          fmt("%zu band violations, max |F - (t - t^3/3)| %.4f <= 0.02 on t <= 0.5, %zu singular", r.violations,
              r.max_taylor_gap, r.excluded_singular_trials)};
}

Verdict from_suite(const SuiteReport& r) { return {r.passed, suite_detail(r)}; }

Verdict sampling() {
  const SuiteReport r = sampling_suite(100, 107);
  return {r.passed, suite_detail(r) + fmt(", monte carlo pass rate %.3f >= 0.96", r.metrics.at("chebyshev_pass_rate"))};
}

Verdict classical() {
  bool pass = true;
  std::string detail;
  for (const char* name : {"hoffman-wielandt", "weyl", "interlacing"}) {
    const SuiteReport r = run_suite(name, 500, 108);
    pass = pass && r.passed;
    detail += fmt("%s %zu/%zu violations; ", name, r.failures, r.instances);
  }
  detail.resize(detail.size() - 2);
  return {pass, detail};
}

Verdict frame_clt() {
  const TightFrame frame = random_tight_frame(200, 3, Field::Real, RngStream{109, 0});
  const FrameCheck check = check_tight_frame(frame);
  const FrameDistanceReport b = be_frame_distance(frame, AtomDistribution::bernoulli(), 5000, RngStream{109, 1});
  const FrameDistanceReport g = be_frame_distance(frame, AtomDistribution::real_gaussian(), 5000, RngStream{109, 2});
  return {check.holds && b.statistic <= 0.05 && g.statistic <= g.noise_band,
          fmt("bernoulli %.4f <= 0.05, gaussian baseline %.4f <= band %.4f, max |v_j| %.3f", b.statistic, g.statistic,
              g.noise_band, frame.max_norm)};
}

Verdict concentration() {
  const AtomDistribution atom = atom_from_name("trunc:rgauss:4");
  const ConcentrationReport r = projection_concentration(atom, 400, 100, 5000, RngStream{110, 0});
  return {r.tail_frequency <= 0.01 && r.mean_within_band,
          fmt("tail %.4f <= 0.01, mean dist^2 %.3f, |mean - 100| %.3f <= 3 SE = %.3f", r.tail_frequency,
              r.mean_square, std::abs(r.mean_square - 100.0), 3 * r.standard_error)};
}

FigureOptions figure_options(std::size_t trials, std::uint64_t seed) {
  FigureOptions options;
  options.n = 100;
  options.trials = trials;
  options.master_seed = seed;
  options.workers = workers();
  return options;
}

Verdict joint_bottom_two() {
  const FigureData f = reproduce_figure(3, figure_options(1000, 111));
  const Surface& b = f.surfaces.at(0);
  const Surface& g = f.surfaces.at(1);
  double gap = 0.0;
  for (std::size_t i = 0; i < b.value.size(); ++i) gap = std::max(gap, std::abs(b.value[i] - g.value[i]));
  return {gap <= 0.1, fmt("sup joint-cdf gap %.4f <= 0.1 on %zux%zu grid", gap, b.x.size(), b.y.size())};
}

Verdict rectangular() {
  const FigureData f = reproduce_figure(5, figure_options(1000, 112));
  const double trials = static_cast<double>(f.trials);
  std::size_t violations = 0;
  double worst = 0.0;
  // Curves come as bernoulli l = 0, 1, 2 then gaussian l = 0, 1, 2.
  for (std::size_t group = 0; group < 2; ++group) {
    for (std::size_t l = 0; l < 2; ++l) {
      const Curve& left = f.curves.at(3 * group + l);
      const Curve& right = f.curves.at(3 * group + l + 1);
      for (std::size_t i = 0; i < left.t.size(); ++i) {
        const double p = left.value[i], q = right.value[i];
        const double se = std::sqrt((p * (1 - p) + q * (1 - q)) / trials);
        worst = std::max(worst, q - p);
        violations += q > p + 2 * se;
      }
    }
  }
  return {violations == 0,
          fmt("%zu grid points out of order beyond 2 SE, largest reversal %.4f", violations, worst)};
}

Verdict non_iid() {
  bool pass = true;
  std::string detail;
  std::uint64_t seed = 113;
  for (int period : {3, 4}) {
    ExperimentConfig config;
    config.ensemble = EnsembleSpec{100, 100, sparse_signed_grid(period), 0};
    config.statistic = SqrtSigmaMin{};
    config.trials = 1000;
    config.master_seed = seed++;
    config.reference_law = "edelman-real-sqrt";
    const ExperimentResult r = run_experiment(config, workers());
    pass = pass && r.gof->ks <= 0.08;
    detail += fmt("grid%d ks %.4f <= 0.08 (%zu singular); ", period, r.gof->ks, r.excluded_singular_trials);
  }
  detail.resize(detail.size() - 2);
  return {pass, detail};
}

Verdict marchenko_pastur() {
  const GoFReport g = esd_vs_mp(AtomDistribution::real_gaussian(), 200, RngStream{114, 0});
  const GoFReport b = esd_vs_mp(AtomDistribution::bernoulli(), 200, RngStream{114, 1});
  const double edge = std::abs(mp_cdf(4.0) - 1.0);
  return {g.ks <= 0.1 && b.ks <= 0.1 && edge <= 1e-6,
          fmt("gaussian ks %.4f, bernoulli ks %.4f <= 0.1, |mp_cdf(4) - 1| %.1e <= 1e-6", g.ks, b.ks, edge)};
}

Verdict small_singular_values() {
  const ExperimentResult r =
      run_experiment(square(400, AtomDistribution::real_gaussian(), SmallCount{0.1}, 100, 115), workers());
  const double target = 0.5 * (2.0 / std::numbers::pi) * std::pow(400.0, 0.9);
  std::size_t above = 0;
  double lowest = INFINITY;
  for (const auto& s : r.samples) {
    above += s[0] >= target;
    lowest = std::min(lowest, s[0]);
  }
  return {above >= 99 && r.samples.size() == 100,
          fmt("%zu/100 trials with Y >= %.2f, smallest Y %.0f", above, target, lowest)};
}

Verdict condition_law() {
  const ExperimentConfig config =
      square(100, AtomDistribution::complex_gaussian(), ConditionTau{}, 2000, 116, "edelman-complex");
  const ExperimentResult r = run_experiment(config, workers());
  const std::vector<int> inside = parallel_map(config.trials, workers(), [&](std::size_t t) {
    const double ratio =
        singular_values(sample_matrix(config.ensemble, trial_stream(config.master_seed, t)).matrix).largest() / 10.0;
    return ratio >= 1.8 && ratio <= 2.2 ? 1 : 0;
  });
  double fraction = 0.0;
  for (int v : inside) fraction += v;
  fraction /= static_cast<double>(config.trials);
  return {r.gof->ks <= 0.08 && fraction >= 0.99,
          fmt("tau ks %.4f <= 0.08, sigma_1 / sqrt(n) in [1.8, 2.2] for %.4f >= 0.99", r.gof->ks, fraction)};
}

Verdict bessel() {
  const double j0 = std::abs(bessel_j(0, 0.0) - 1.0);
  const double j1 = std::abs(bessel_j(1, 0.0));
  double asymmetry = 0.0;
  for (double x : {0.1, 0.5, 1.0, 2.0, 4.0, 7.5, 12.0}) {
    for (double y : {0.2, 0.5, 1.5, 3.0, 6.0, 10.0}) asymmetry = std::max(asymmetry, std::abs(bessel_kernel(x, y) - bessel_kernel(y, x)));
  }
  const RealMatrix gram = bessel_kernel_gram({0.5, 1.5, 3.0, 5.0, 8.0});
  const double lowest = Eigen::SelfAdjointEigenSolver<RealMatrix>(gram).eigenvalues().minCoeff();
  return {j0 <= 1e-10 && j1 <= 1e-10 && asymmetry <= 1e-8 && lowest >= -1e-8,
          fmt("|J0(0) - 1| %.1e, |J1(0)| %.1e, asymmetry %.1e, gram min eigenvalue %.3e", j0, j1, asymmetry, lowest)};
}

Verdict determinism() {
  const ExperimentConfig config = square(40, AtomDistribution::bernoulli(), HardEdgeK{2}, 400, 118, "edelman-real");
  const std::filesystem::path root = std::filesystem::temp_directory_path() / "hardedge_acceptance_determinism";
  std::filesystem::remove_all(root);
  write_experiment_outputs(run_experiment(config, 1), root / "w1");
  write_experiment_outputs(run_experiment(config, 8), root / "w8");
  std::size_t identical = 0;
  const char* files[] = {"samples.csv", "ecdf.csv", "report.json"};
  for (const char* file : files) {
    const std::string a = slurp(root / "w1" / file);
    identical += !a.empty() && a == slurp(root / "w8" / file);
  }
  std::filesystem::remove_all(root);
  return {identical == 3, fmt("%zu/3 output files byte-identical under 1 and 8 workers", identical)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
      {"exact complex law", exact_complex_law},
      {"real gaussian limit", real_gaussian_limit},
      {"universality", universality},
      {"least singular value bound", spielman_teng},
      {"projection identities", [] { return from_suite(projection_suite(300, 105)); }},
      {"distance duality", [] { return from_suite(distance_suite(300, 106)); }},
      {"sampling bound", sampling},
      {"classical inequalities", classical},
      {"frame clt", frame_clt},
      {"concentration", concentration},
      {"joint bottom two", joint_bottom_two},
      {"rectangular ordering", rectangular},
      {"non-iid grids", non_iid},
      {"marchenko-pastur", marchenko_pastur},
      {"small singular values", small_singular_values},
      {"condition number", condition_law},
      {"bessel kernel", bessel},
      {"determinism", determinism},
  };

  std::set<std::size_t> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::stoul(argv[i]));

  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    if (!selected.empty() && !selected.count(k + 1)) continue;
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = criteria[k].second();
    } catch (const std::exception& e) {
      v = {false, std::string("error: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += !v.pass;
    std::printf("%s %2zu %s: %s [%.1f s]\n", v.pass ? "PASS" : "FAIL", k + 1, criteria[k].first, v.detail.c_str(),
                seconds);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
