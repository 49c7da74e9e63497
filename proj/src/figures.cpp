#include "hardedge/figures.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "hardedge/experiment.hpp"

namespace hardedge {

namespace {

constexpr std::size_t kCurvePoints = 121;
constexpr std::size_t kSurfacePoints = 20;

std::vector<double> linspace(double lo, double hi, std::size_t count) {
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
  }
  return out;
}

Curve ecdf_curve(std::string label, const EmpiricalCDF& ecdf, double upper) {
  Curve c{std::move(label), linspace(0.0, upper, kCurvePoints), {}};
  for (double t : c.t) c.value.push_back(ecdf(t));
  return c;
}

template <class F>
Curve function_curve(std::string label, F&& f, double upper) {
  Curve c{std::move(label), linspace(0.0, upper, kCurvePoints), {}};
  for (double t : c.t) c.value.push_back(f(t));
  return c;
}

struct Runner {
  const FigureOptions& options;
  std::size_t default_trials;
  FigureData& figure;
  std::uint64_t next_seed;

  ExperimentResult run(EnsembleSpec spec, Statistic statistic) {
    ExperimentConfig config;
    config.ensemble = std::move(spec);
    config.statistic = statistic;
    config.trials = options.trials != 0 ? options.trials : default_trials;
    config.master_seed = next_seed++;
    ExperimentResult result = run_experiment(config, options.workers);
    figure.trials = config.trials;
    figure.excluded_singular_trials += result.excluded_singular_trials;
    return result;
  }
};

EmpiricalCDF sqrt_component(const ExperimentResult& result, std::size_t index) {
  std::vector<double> values = result.component(index);
  for (double& v : values) v = std::sqrt(v);
  return EmpiricalCDF(std::move(values));
}

double real_sqrt_limit(double x) { return 1.0 - std::exp(-x - 0.5 * x * x); }

}  // namespace

FigureData reproduce_figure(int number, const FigureOptions& options) {
  if (number < 1 || number > 7) throw std::invalid_argument("reproduce_figure: figure number must be 1..7");
  const std::size_t n = options.n;
  FigureData figure;
  figure.number = number;
  Runner runner{options, number == 2 ? std::size_t{20000} : std::size_t{1000}, figure, options.master_seed};
  const AtomDistribution bernoulli = AtomDistribution::bernoulli();
  const AtomDistribution gaussian = AtomDistribution::real_gaussian();

  switch (number) {
    case 1:
    case 2: {
      figure.title = "P(sqrt(n) sigma_n <= x)";
      const double upper = number == 1 ? 3.0 : 1.0;
      const auto b = runner.run(square_ensemble(n, bernoulli), SqrtSigmaMin{});
      const auto g = runner.run(square_ensemble(n, gaussian), SqrtSigmaMin{});
      figure.curves.push_back(ecdf_curve("bernoulli", b.ecdf, upper));
      figure.curves.push_back(ecdf_curve("gaussian", g.ecdf, upper));
      if (number == 1) {
        figure.curves.push_back(function_curve("limit", real_sqrt_limit, upper));
      } else {
        figure.curves.push_back(function_curve("identity", [](double x) { return x; }, upper));
        figure.curves.push_back(function_curve("taylor", [](double x) { return x - x * x * x / 3.0; }, upper));
      }
      break;
    }
    case 3: {
      figure.title = "P(sqrt(n) sigma_n <= x and sqrt(n) sigma_{n-1} <= y)";
      const std::vector<double> xs = linspace(0.0, 3.0, kSurfacePoints);
      const std::vector<double> ys = linspace(0.0, 5.0, kSurfacePoints);
      for (const auto& [label, atom] : {std::pair{"bernoulli", bernoulli}, std::pair{"gaussian", gaussian}}) {
        const auto r = runner.run(square_ensemble(n, atom), HardEdgeK{2});
        std::vector<std::vector<double>> points;
        for (const auto& s : r.samples) points.push_back({std::sqrt(s[0]), std::sqrt(s[1])});
        figure.surfaces.push_back(Surface{label, xs, ys, joint_ecdf(points, {xs, ys})});
      }
      break;
    }
    case 4: {
      figure.title = "P(sqrt(n) sigma_{n-k} <= x), k = 0, 1, 2";
      for (const auto& [label, atom] : {std::pair{"bernoulli", bernoulli}, std::pair{"gaussian", gaussian}}) {
        const auto r = runner.run(square_ensemble(n, atom), HardEdgeK{3});
        for (std::size_t k = 0; k < 3; ++k) {
          figure.curves.push_back(
              ecdf_curve(std::string(label) + "_k" + std::to_string(k), sqrt_component(r, k), 8.0));
        }
      }
      break;
    }
    case 5: {
      figure.title = "P(sqrt(n) sigma_{n-l} <= x) for (n - l) x n matrices, l = 0, 1, 2";
      for (const auto& [label, atom] : {std::pair{"bernoulli", bernoulli}, std::pair{"gaussian", gaussian}}) {
        for (std::size_t l = 0; l < 3; ++l) {
          const auto r = runner.run(EnsembleSpec{n - l, n, atom, l}, SqrtSigmaMin{});
          figure.curves.push_back(ecdf_curve(std::string(label) + "_l" + std::to_string(l), r.ecdf, 8.0));
        }
      }
      break;
    }
    case 6: {
      figure.title = "P((2n / kappa)^2 <= t), complex gaussian";
      const auto r = runner.run(square_ensemble(n, AtomDistribution::complex_gaussian()), ConditionTau{});
      figure.curves.push_back(ecdf_curve("complex_gaussian", r.ecdf, 5.0));
      figure.curves.push_back(function_curve("limit", edelman_complex_cdf, 5.0));
      break;
    }
    case 7: {
      figure.title = "P(sqrt(n) sigma_n <= x), non-identically distributed entries";
      for (int period : {3, 4}) {
        const auto r = runner.run(EnsembleSpec{n, n, sparse_signed_grid(period), 0}, SqrtSigmaMin{});
        figure.curves.push_back(ecdf_curve("grid" + std::to_string(period), r.ecdf, 3.0));
      }
      figure.curves.push_back(function_curve("limit", real_sqrt_limit, 3.0));
      break;
    }
  }
  return figure;
}

std::vector<std::filesystem::path> write_figure(const FigureData& figure, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;
  char buffer[96];
  const std::string prefix = "figure" + std::to_string(figure.number) + "_";
  for (const Curve& c : figure.curves) {
    const auto path = dir / (prefix + c.label + ".csv");
    std::ofstream out(path);
    out << "t,value\n";
    for (std::size_t i = 0; i < c.t.size(); ++i) {
      std::snprintf(buffer, sizeof buffer, "%.17g,%.17g\n", c.t[i], c.value[i]);
      out << buffer;
    }
    written.push_back(path);
  }
  for (const Surface& s : figure.surfaces) {
    const auto path = dir / (prefix + s.label + ".csv");
    std::ofstream out(path);
    out << "x,y,value\n";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      for (std::size_t j = 0; j < s.y.size(); ++j) {
        std::snprintf(buffer, sizeof buffer, "%.17g,%.17g,%.17g\n", s.x[i], s.y[j], s.value[i * s.y.size() + j]);
        out << buffer;
      }
    }
    written.push_back(path);
  }
  return written;
}

}  // namespace hardedge
