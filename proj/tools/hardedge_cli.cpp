#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hardedge/cltframe.hpp"
#include "hardedge/config.hpp"
#include "hardedge/experiment.hpp"
#include "hardedge/figures.hpp"
#include "hardedge/limitlaws.hpp"
#include "hardedge/matrix_io.hpp"
#include "hardedge/parallel.hpp"
#include "hardedge/reduction.hpp"
#include "hardedge/spectral.hpp"
#include "hardedge/suites.hpp"

using namespace hardedge;
using nlohmann::json;

namespace {

constexpr int kBoundFailed = 1;
constexpr int kUsageError = 2;

struct Grid {
  double a, b;
  std::size_t steps;
};

Grid parse_grid(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream in(text);
  for (std::string part; std::getline(in, part, ':');) parts.push_back(part);
  if (parts.size() != 3) throw std::invalid_argument("grid must be a:b:steps");
  Grid g{std::stod(parts[0]), std::stod(parts[1]), static_cast<std::size_t>(std::stoul(parts[2]))};
  if (g.steps < 1 || !(g.b >= g.a)) throw std::invalid_argument("grid needs steps >= 1 and b >= a");
  return g;
}

std::string number(double x) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", x);
  return buffer;
}

json suite_json(const SuiteReport& r) {
  return json{{"suite", r.name},          {"instances", r.instances}, {"failures", r.failures},
              {"worst_residual", r.worst_residual}, {"metrics", r.metrics}, {"passed", r.passed}};
}

int emit(const json& report, bool passed) {
  std::cout << report.dump(2) << '\n';
  return passed ? 0 : kBoundFailed;
}

int laws_eval(const std::string& law_name, const std::string& grid_text, const std::string& out_path) {
  const LimitLaw law = law_by_name(law_name);
  const Grid grid = parse_grid(grid_text);
  std::ofstream file;
  if (!out_path.empty()) file.open(out_path);
  std::ostream& out = out_path.empty() ? std::cout : file;
  out << "t,cdf\n";
  for (std::size_t i = 0; i < grid.steps; ++i) {
    const double t = grid.steps == 1 ? grid.a
                                     : grid.a + (grid.b - grid.a) * static_cast<double>(i) /
                                                    static_cast<double>(grid.steps - 1);
    out << number(t) << ',' << number(law.cdf(t)) << '\n';
  }
  return 0;
}

int run_command(const std::string& config_path, std::size_t trials, const std::string& seed, const std::string& out) {
  ExperimentConfig config = load_config(config_path);
  if (trials > 0) config.trials = trials;
  if (!seed.empty()) config.master_seed = std::stoull(seed);
  if (!out.empty()) config.output_dir = out;
  const ExperimentResult result = run_experiment(config);
  if (!config.output_dir.empty()) write_experiment_outputs(result, config.output_dir);
  json summary{{"statistic", statistic_name(config.statistic)},
               {"trials", config.trials},
               {"included_trials", result.samples.size()},
               {"excluded_singular_trials", result.excluded_singular_trials}};
  if (result.gof) summary["gof"] = {{"ks", result.gof->ks}, {"levy", result.gof->levy}};
  return emit(summary, true);
}

json matrix_report(const Matrix& a, bool& passed) {
  const SingularSpectrum spectrum = singular_values(a);
  const Norms nm = norms(a);
  json report{{"rows", a.rows()},
              {"cols", a.cols()},
              {"field", std::string(to_string(a.field()))},
              {"singular_values", spectrum.values},
              {"frobenius", nm.frobenius},
              {"operator", nm.op}};
  double sum_sq = 0.0;
  for (double s : spectrum.values) sum_sq += s * s;
  const double frobenius_gap = std::abs(sum_sq - nm.frobenius * nm.frobenius) / std::max(1e-300, nm.frobenius * nm.frobenius);
  report["frobenius_consistency_gap"] = frobenius_gap;
  passed = frobenius_gap <= 1e-10 || nm.frobenius == 0.0;

  const std::vector<double> w = hermitian_eigenvalues(hermitize(a));
  std::vector<double> expected;
  for (double s : spectrum.values) expected.push_back(s);
  for (std::size_t i = spectrum.values.size(); i < std::max(a.rows(), a.cols()); ++i) expected.push_back(0.0);
  for (auto it = spectrum.values.rbegin(); it != spectrum.values.rend(); ++it) expected.push_back(-*it);
  double hermitize_gap = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) hermitize_gap = std::max(hermitize_gap, std::abs(w[i] - expected[i]));
  report["hermitization_gap"] = hermitize_gap;
  passed = passed && hermitize_gap <= 1e-8 * std::max(1.0, spectrum.largest());

  if (a.is_square() && spectrum.smallest() > kSingularThreshold * spectrum.largest()) {
    report["condition_number"] = condition_number(spectrum);
    report["hard_edge_statistic"] = hard_edge_statistic(spectrum, 1)[0];
    const DistanceReport d = distances_to_hyperplanes(a);
    report["distances"] = d.geometric;
    report["distance_duality_gap"] = d.max_relative_gap;
    passed = passed && d.agree;
  } else if (a.is_square()) {
    report["singular"] = true;
  }
  report["passed"] = passed;
  return report;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hard-edge spectral statistics of random matrices"};
  app.require_subcommand(1);

  auto* laws = app.add_subcommand("laws", "Evaluate limit laws");
  laws->require_subcommand(1);
  auto* laws_eval_cmd = laws->add_subcommand("eval", "Print \"t,cdf\" for a law on a grid");
  std::string law_name, grid_text = "0:4:41", laws_out;
  laws_eval_cmd->add_option("--law", law_name, "Law name")->required();
  laws_eval_cmd->add_option("--grid", grid_text, "a:b:steps (steps points, endpoints included)");
  laws_eval_cmd->add_option("--out", laws_out, "Output file (default stdout)");
  auto* laws_list = laws->add_subcommand("list", "List law names");

  auto* run = app.add_subcommand("run", "Run a Monte Carlo experiment from a JSON config");
  std::string config_path, seed_text, out_dir;
  std::size_t trials = 0;
  run->add_option("--config", config_path, "Config file")->required()->check(CLI::ExistingFile);
  run->add_option("--trials", trials, "Override the trial count");
  run->add_option("--seed", seed_text, "Override the master seed");
  run->add_option("--out", out_dir, "Output directory");

  auto* verify = app.add_subcommand("verify", "Run verification suites");
  verify->require_subcommand(1);
  std::uint64_t seed = 1;
  std::size_t verify_trials = 300;
  std::string suite = "projection";

  auto* reduction = verify->add_subcommand("reduction", "Proof-pipeline identities and bounds");
  reduction->add_option("--suite", suite)
      ->check(CLI::IsMember({"projection", "distance", "correlation", "sampling", "pipeline"}));
  reduction->add_option("--trials", verify_trials);
  reduction->add_option("--seed", seed);

  auto* spectral = verify->add_subcommand("spectral", "Hoffman-Wielandt, Weyl and interlacing checks");
  std::string spectral_suite = "all";
  std::size_t spectral_trials = 500;
  spectral->add_option("--suite", spectral_suite)
      ->check(CLI::IsMember({"all", "hoffman-wielandt", "weyl", "interlacing"}));
  spectral->add_option("--trials", spectral_trials);
  spectral->add_option("--seed", seed);

  auto* clt = verify->add_subcommand("clt", "Frame CLT distance against the gaussian vector");
  std::string frame_text = "200,3", atom_name = "bernoulli";
  std::size_t clt_trials = 5000;
  double tolerance = -1.0;
  clt->add_option("--frame", frame_text, "n,N");
  clt->add_option("--atom", atom_name);
  clt->add_option("--trials", clt_trials);
  clt->add_option("--seed", seed);
  clt->add_option("--tolerance", tolerance, "Largest accepted statistic (gaussian atoms default to the noise band)");

  auto* concentration = verify->add_subcommand("concentration", "Projection of a random vector onto a subspace");
  std::string conc_atom = "trunc:rgauss:4";
  std::size_t conc_n = 400, conc_d = 100, conc_trials = 5000;
  concentration->add_option("--atom", conc_atom);
  concentration->add_option("--n", conc_n);
  concentration->add_option("--d", conc_d);
  concentration->add_option("--trials", conc_trials);
  concentration->add_option("--seed", seed);

  auto* esd = verify->add_subcommand("esd", "One draw's singular-value ESD against Marchenko-Pastur");
  std::string esd_atom = "rgauss";
  std::size_t esd_n = 200;
  esd->add_option("--atom", esd_atom);
  esd->add_option("--n", esd_n);
  esd->add_option("--seed", seed);

  auto* matrix = verify->add_subcommand("matrix", "Spectral report for a matrix file");
  std::string matrix_path;
  matrix->add_option("file", matrix_path)->required()->check(CLI::ExistingFile);

  auto* figure = app.add_subcommand("figure", "Reproduce a figure's data files");
  int figure_number = 1;
  FigureOptions figure_options;
  std::string figure_out = ".";
  figure->add_option("number", figure_number, "1..7")->required()->check(CLI::Range(1, 7));
  figure->add_option("--n", figure_options.n);
  figure->add_option("--trials", figure_options.trials);
  figure->add_option("--seed", figure_options.master_seed);
  figure->add_option("--out", figure_out);

  CLI11_PARSE(app, argc, argv);

  try {
    if (laws_eval_cmd->parsed()) return laws_eval(law_name, grid_text, laws_out);
    if (laws_list->parsed()) {
      for (const auto& name : law_names()) std::cout << name << '\n';
      return 0;
    }
    if (run->parsed()) return run_command(config_path, trials, seed_text, out_dir);
    if (reduction->parsed()) {
      const SuiteReport r = run_suite(suite, verify_trials, seed);
      return emit(suite_json(r), r.passed);
    }
    if (spectral->parsed()) {
      json reports = json::array();
      bool passed = true;
      for (const auto& name : {"hoffman-wielandt", "weyl", "interlacing"}) {
        if (spectral_suite != "all" && spectral_suite != name) continue;
        const SuiteReport r = run_suite(name, spectral_trials, seed);
        passed = passed && r.passed;
        reports.push_back(suite_json(r));
      }
      return emit(json{{"suites", reports}, {"passed", passed}}, passed);
    }
    if (clt->parsed()) {
      const auto comma = frame_text.find(',');
      if (comma == std::string::npos) throw std::invalid_argument("--frame must be n,N");
      const std::size_t n = std::stoul(frame_text.substr(0, comma));
      const std::size_t big_n = std::stoul(frame_text.substr(comma + 1));
      const AtomDistribution atom = atom_from_name(atom_name);
      const TightFrame frame = random_tight_frame(n, big_n, atom.field(), RngStream{seed, 0}.child(0));
      const FrameCheck check = check_tight_frame(frame);
      const FrameDistanceReport r = be_frame_distance(frame, atom, clt_trials, RngStream{seed, 1});
      const bool gaussian_atom = atom_name == "rgauss" || atom_name == "cgauss";
      const double limit = tolerance >= 0.0 ? tolerance : gaussian_atom ? r.noise_band : -1.0;
      const bool passed = check.holds && (limit < 0.0 || r.statistic <= limit);
      json report{{"n", n},
                  {"N", big_n},
                  {"atom", atom.name()},
                  {"trials", clt_trials},
                  {"max_norm", frame.max_norm},
                  {"frame_residual", check.residual},
                  {"trace_gap", check.trace_gap},
                  {"coordinate_ks", r.coordinate_ks},
                  {"pairwise_joint", r.pairwise_joint},
                  {"statistic", r.statistic},
                  {"noise_band", r.noise_band},
                  {"passed", passed}};
      if (limit >= 0.0) report["tolerance"] = limit;
      return emit(report, passed);
    }
    if (concentration->parsed()) {
      const ConcentrationReport r =
          projection_concentration(atom_from_name(conc_atom), conc_n, conc_d, conc_trials, RngStream{seed, 0});
      const bool passed = r.mean_within_band && r.tail_frequency <= 0.01;
      return emit(json{{"n", r.n},
                       {"d", r.d},
                       {"trials", r.trials},
                       {"tail_frequency", r.tail_frequency},
                       {"mean_square", r.mean_square},
                       {"standard_error", r.standard_error},
                       {"mean_within_band", r.mean_within_band},
                       {"median_mean_gap", r.median_mean_gap},
                       {"passed", passed}},
                  passed);
    }
    if (esd->parsed()) {
      const GoFReport r = esd_vs_mp(atom_from_name(esd_atom), esd_n, RngStream{seed, 0});
      const bool passed = r.ks <= 0.1;
      return emit(json{{"n", esd_n}, {"ks", r.ks}, {"levy", r.levy}, {"notes", r.notes}, {"passed", passed}},
                  passed);
    }
    if (matrix->parsed()) {
      std::ifstream in(matrix_path);
      bool passed = false;
      const json report = matrix_report(read_matrix(in), passed);
      return emit(report, passed);
    }
    if (figure->parsed()) {
      figure_options.workers = default_worker_count();
      const FigureData data = reproduce_figure(figure_number, figure_options);
      for (const auto& path : write_figure(data, figure_out)) std::cout << path.string() << '\n';
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "hardedge: " << e.what() << '\n';
    return kUsageError;
  }
  return kUsageError;
}
