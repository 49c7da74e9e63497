#include "hardedge/ecdf.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace hardedge {

EmpiricalCDF::EmpiricalCDF(std::vector<double> samples) : sorted_(std::move(samples)) {
  for (double x : sorted_) {
    if (std::isnan(x)) throw std::invalid_argument("EmpiricalCDF: NaN sample");
  }
  std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalCDF::operator()(double t) const {
  if (sorted_.empty()) return 0.0;
  const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), t);
  return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

double EmpiricalCDF::left_limit(double t) const {
  if (sorted_.empty()) return 0.0;
  const auto it = std::lower_bound(sorted_.begin(), sorted_.end(), t);
  return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

double EmpiricalCDF::quantile(double p) const {
  if (sorted_.empty()) throw std::logic_error("EmpiricalCDF::quantile on empty sample");
  const double n = static_cast<double>(sorted_.size());
  auto index = static_cast<std::size_t>(std::ceil(std::clamp(p, 0.0, 1.0) * n));
  index = std::clamp<std::size_t>(index, 1, sorted_.size());
  return sorted_[index - 1];
}

double ks_distance(const EmpiricalCDF& f, const CdfFunction& g) {
  if (f.empty()) throw std::invalid_argument("ks_distance: empty sample");
  const auto& x = f.sorted_samples();
  const double n = static_cast<double>(x.size());
  double sup = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double gx = g(x[i]);
    sup = std::max(sup, std::abs(f(x[i]) - gx));
    sup = std::max(sup, std::abs(gx - static_cast<double>(i) / n));
  }
  return sup;
}

double ks_distance(const EmpiricalCDF& f, const EmpiricalCDF& g) {
  if (f.empty() || g.empty()) throw std::invalid_argument("ks_distance: empty sample");
  // Both functions are constant between merged jump points, so the sup is
  // attained at one of them (right-continuous values).
  double sup = 0.0;
  for (double t : f.sorted_samples()) sup = std::max(sup, std::abs(f(t) - g(t)));
  for (double t : g.sorted_samples()) sup = std::max(sup, std::abs(f(t) - g(t)));
  return sup;
}

namespace {

constexpr double kLevyResolution = 1e-4;

// Both conditions of the Levy sandwich at shift h, for step functions.
bool levy_condition(const EmpiricalCDF& f, const EmpiricalCDF& g, double h) {
  const double slack = h + 1e-12;
  // G(x) - F(x + h) is piecewise constant with breaks at jumps of G and at f_k - h.
  for (double t : g.sorted_samples()) {
    if (g(t) - f(t + h) > slack) return false;
    if (f(t - h) - g(t) > slack) return false;
  }
  for (double t : f.sorted_samples()) {
    if (g(t - h) - f(t) > slack) return false;
    if (f(t) - g(t + h) > slack) return false;
  }
  return true;
}

bool levy_condition(const EmpiricalCDF& f, const CdfFunction& g, double h) {
  const double slack = h + 1e-12;
  const auto& x = f.sorted_samples();
  for (std::size_t k = 0; k < x.size(); ++k) {
    // F(x - h) - G(x) peaks where F(. - h) just jumped: x = f_k + h.
    if (f(x[k]) - g(x[k] + h) > slack) return false;
    // G(x) - F(x + h) peaks just before F(. + h) jumps: x -> (f_k - h)^-.
    if (g(x[k] - h) - f.left_limit(x[k]) > slack) return false;
  }
  // Beyond the last jump F(x + h) = 1 and before the first F(x - h) = 0.
  return true;
}

template <class G>
double levy_bisect(const EmpiricalCDF& f, const G& g) {
  if (f.empty()) throw std::invalid_argument("levy_distance: empty sample");
  if (levy_condition(f, g, 0.0)) return 0.0;
  double lo = 0.0;
  double hi = 1.0;
  while (hi - lo > kLevyResolution) {
    const double mid = 0.5 * (lo + hi);
    if (levy_condition(f, g, mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

}  // namespace

double levy_distance(const EmpiricalCDF& f, const EmpiricalCDF& g) {
  if (g.empty()) throw std::invalid_argument("levy_distance: empty sample");
  return levy_bisect(f, g);
}

double levy_distance(const EmpiricalCDF& f, const CdfFunction& g) { return levy_bisect(f, g); }

double ks_critical_value(double alpha, std::size_t n) {
  if (!(alpha > 0.0 && alpha < 1.0) || n == 0) throw std::invalid_argument("ks_critical_value: bad arguments");
  return std::sqrt(-0.5 * std::log(0.5 * alpha)) / std::sqrt(static_cast<double>(n));
}

double ks_critical_value(double alpha, std::size_t n, std::size_t m) {
  if (n == 0 || m == 0) throw std::invalid_argument("ks_critical_value: empty sample");
  const double nn = static_cast<double>(n);
  const double mm = static_cast<double>(m);
  return std::sqrt(-0.5 * std::log(0.5 * alpha)) * std::sqrt((nn + mm) / (nn * mm));
}

std::vector<double> joint_ecdf(const std::vector<std::vector<double>>& samples,
                               const std::vector<std::vector<double>>& axes) {
  if (axes.empty()) throw std::invalid_argument("joint_ecdf: no axes");
  const std::size_t k = axes.size();
  std::size_t cells = 1;
  for (const auto& axis : axes) cells *= axis.size();
  for (const auto& v : samples) {
    if (v.size() < k) throw std::invalid_argument("joint_ecdf: sample shorter than grid dimension");
  }
  std::vector<double> out(cells, 0.0);
  if (samples.empty()) return out;
  std::vector<std::size_t> index(k, 0);
  for (std::size_t cell = 0; cell < cells; ++cell) {
    std::size_t rest = cell;
    for (std::size_t d = k; d-- > 0;) {
      index[d] = rest % axes[d].size();
      rest /= axes[d].size();
    }
    std::size_t hits = 0;
    for (const auto& v : samples) {
      bool inside = true;
      for (std::size_t d = 0; d < k && inside; ++d) inside = v[d] <= axes[d][index[d]];
      hits += inside ? 1 : 0;
    }
    out[cell] = static_cast<double>(hits) / static_cast<double>(samples.size());
  }
  return out;
}

double mean(std::span<const double> samples) {
  if (samples.empty()) throw std::invalid_argument("mean: empty sample");
  return std::accumulate(samples.begin(), samples.end(), 0.0) / static_cast<double>(samples.size());
}

double median(std::vector<double> samples) {
  if (samples.empty()) throw std::invalid_argument("median: empty sample");
  std::sort(samples.begin(), samples.end());
  const std::size_t n = samples.size();
  return n % 2 == 1 ? samples[n / 2] : 0.5 * (samples[n / 2 - 1] + samples[n / 2]);
}

double median_mean_gap(std::span<const double> samples) {
  return std::abs(mean(samples) - median(std::vector<double>(samples.begin(), samples.end())));
}

namespace {

std::vector<double> average_ranks(std::span<const double> x) {
  std::vector<std::size_t> order(x.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<double> ranks(x.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && x[order[j + 1]] == x[order[i]]) ++j;
    const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = rank;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

double spearman_correlation(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("spearman_correlation: need two equal-length samples of size >= 2");
  }
  const std::vector<double> rx = average_ranks(x);
  const std::vector<double> ry = average_ranks(y);
  const double mx = mean(rx);
  const double my = mean(ry);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace hardedge
