#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace hardedge {

/// Right-continuous empirical distribution function of a finite sample.
class EmpiricalCDF {
 public:
  EmpiricalCDF() = default;
  explicit EmpiricalCDF(std::vector<double> samples);

  /// Fraction of samples <= t.
  double operator()(double t) const;
  /// Fraction of samples < t.
  double left_limit(double t) const;

  std::size_t count() const { return sorted_.size(); }
  bool empty() const { return sorted_.empty(); }
  const std::vector<double>& sorted_samples() const { return sorted_; }
  /// Empirical quantile, smallest x with F(x) >= p.
  double quantile(double p) const;

 private:
  std::vector<double> sorted_;
};

using CdfFunction = std::function<double(double)>;

/// sup_t |F(t) - G(t)| for a continuous G, checking both one-sided gaps at
/// every jump of F.
double ks_distance(const EmpiricalCDF& f, const CdfFunction& g);
/// Two-sample sup_t |F(t) - G(t)|.
double ks_distance(const EmpiricalCDF& f, const EmpiricalCDF& g);

/// Levy distance inf{h > 0 : F(x - h) - h <= G(x) <= F(x + h) + h for all x},
/// by bisection on h to 1e-4 (the returned h satisfies the condition).
double levy_distance(const EmpiricalCDF& f, const EmpiricalCDF& g);
double levy_distance(const EmpiricalCDF& f, const CdfFunction& g);

/// Asymptotic one-sample KS critical value c(alpha) / sqrt(n),
/// c(alpha) = sqrt(-ln(alpha / 2) / 2).
double ks_critical_value(double alpha, std::size_t n);
/// Two-sample version with effective size n m / (n + m).
double ks_critical_value(double alpha, std::size_t n, std::size_t m);

/// Empirical joint CDF of k-vectors on a rectangular grid. `axes[d]` lists
/// the grid coordinates of dimension d; the result is row-major over the
/// axes (last axis fastest).
std::vector<double> joint_ecdf(const std::vector<std::vector<double>>& samples,
                               const std::vector<std::vector<double>>& axes);

double mean(std::span<const double> samples);
double median(std::vector<double> samples);
/// |mean - median|.
double median_mean_gap(std::span<const double> samples);
/// Spearman rank correlation (average ranks for ties).
double spearman_correlation(std::span<const double> x, std::span<const double> y);

}  // namespace hardedge
