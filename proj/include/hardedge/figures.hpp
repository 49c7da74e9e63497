#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace hardedge {

struct Curve {
  std::string label;
  std::vector<double> t;
  std::vector<double> value;
};

/// Joint CDF P(X <= x, Y <= y) on a grid, row-major in x.
struct Surface {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> value;
};

struct FigureData {
  int number = 0;
  std::string title;
  std::vector<Curve> curves;
  std::vector<Surface> surfaces;
  std::size_t trials = 0;
  std::size_t excluded_singular_trials = 0;
};

struct FigureOptions {
  std::size_t n = 100;
  /// 0 selects the figure's default (1000, or 20000 for figure 2).
  std::size_t trials = 0;
  std::uint64_t master_seed = 20100101;
  std::size_t workers = 1;
};

/// Figures:
///   1 sqrt(n) sigma_n, Bernoulli and gaussian, with the limit curve
///   2 the same at 20000 trials, with y = x and y = x - x^3/3
///   3 joint CDF of (sqrt(n) sigma_n, sqrt(n) sigma_{n-1}), Bernoulli and gaussian
///   4 sqrt(n) sigma_{n-k}, k = 0, 1, 2
///   5 sqrt(n) sigma_{n-l} of (n - l) x n matrices, l = 0, 1, 2
///   6 (2 n / kappa)^2 for complex gaussian matrices, with 1 - exp(-t)
///   7 sparse-signed grids c = i + j mod 3 and mod 4, with 1 - exp(-x - x^2/2)
FigureData reproduce_figure(int number, const FigureOptions& options);

/// One "t,value" CSV per curve and one "x,y,value" CSV per surface, named
/// figure<k>_<label>.csv. Returns the written paths.
std::vector<std::filesystem::path> write_figure(const FigureData& figure, const std::filesystem::path& dir);

}  // namespace hardedge
