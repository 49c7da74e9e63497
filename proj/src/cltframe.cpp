#include "hardedge/cltframe.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hardedge/ecdf.hpp"
#include "hardedge/parallel.hpp"

namespace hardedge {

namespace {

constexpr std::size_t kGridSize = 20;
constexpr double kFrameTolerance = 1e-8;

AtomDistribution gaussian_for(Field field) {
  return field == Field::Real ? AtomDistribution::real_gaussian() : AtomDistribution::complex_gaussian();
}

ComplexMatrix gaussian_matrix(std::size_t rows, std::size_t cols, Field field, DrawSource& source) {
  const AtomDistribution g = gaussian_for(field);
  ComplexMatrix out(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index i = 0; i < out.rows(); ++i) {
    for (Eigen::Index j = 0; j < out.cols(); ++j) out(i, j) = g.sample(source);
  }
  return out;
}

// Real coordinates of a vector in F^N: Re then Im (complex only).
std::vector<double> real_coordinates(const ComplexVector& v, Field field) {
  std::vector<double> out;
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i).real());
  if (field == Field::Complex) {
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i).imag());
  }
  return out;
}

std::vector<double> column(const std::vector<std::vector<double>>& rows, std::size_t c) {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r[c]);
  return out;
}

std::vector<double> pooled_quantile_axis(std::vector<double> a, const std::vector<double>& b) {
  a.insert(a.end(), b.begin(), b.end());
  const EmpiricalCDF pooled(std::move(a));
  std::vector<double> axis;
  for (std::size_t i = 0; i < kGridSize; ++i) {
    axis.push_back(pooled.quantile((static_cast<double>(i) + 0.5) / static_cast<double>(kGridSize)));
  }
  return axis;
}

}  // namespace

TightFrame make_frame(ComplexMatrix vectors, Field field) {
  if (vectors.rows() == 0 || vectors.cols() == 0) throw std::invalid_argument("make_frame: empty frame");
  if (!vectors.allFinite()) throw std::invalid_argument("make_frame: non-finite entry");
  if (field == Field::Real && vectors.imag().cwiseAbs().maxCoeff() != 0.0) {
    throw std::invalid_argument("make_frame: real frame with complex entries");
  }
  TightFrame frame;
  frame.ambient = static_cast<std::size_t>(vectors.rows());
  frame.size = static_cast<std::size_t>(vectors.cols());
  frame.field = field;
  frame.max_norm = vectors.colwise().norm().maxCoeff();
  frame.vectors = std::move(vectors);
  return frame;
}

FrameCheck check_tight_frame(const TightFrame& frame) {
  const auto n = static_cast<Eigen::Index>(frame.ambient);
  FrameCheck check;
  check.residual = (frame.vectors * frame.vectors.adjoint() - ComplexMatrix::Identity(n, n)).norm();
  check.trace_gap = std::abs(frame.vectors.squaredNorm() - static_cast<double>(frame.ambient));
  check.holds = check.residual <= kFrameTolerance && check.trace_gap <= kFrameTolerance;
  return check;
}

TightFrame standard_basis_frame(std::size_t ambient, Field field) {
  if (ambient == 0) throw std::invalid_argument("standard_basis_frame: N must be positive");
  const auto n = static_cast<Eigen::Index>(ambient);
  return make_frame(ComplexMatrix::Identity(n, n), field);
}

TightFrame random_tight_frame(std::size_t size, std::size_t ambient, Field field, const RngStream& rng) {
  if (ambient == 0 || size < ambient) throw std::invalid_argument("random_tight_frame: need n >= N >= 1");
  DrawSource source = rng.sequential();
  const ComplexMatrix g = gaussian_matrix(size, ambient, field, source);
  const Eigen::HouseholderQR<ComplexMatrix> qr(g);
  const ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(g.rows(), g.cols());
  ComplexMatrix vectors = q.adjoint();
  if (field == Field::Real) vectors = vectors.real().cast<Complex>();
  return make_frame(std::move(vectors), field);
}

ComplexVector frame_sample(const TightFrame& frame, const AtomDistribution& atom, const RngStream& rng) {
  if (atom.field() != frame.field) throw std::invalid_argument("frame_sample: atom and frame fields differ");
  ComplexVector coefficients(static_cast<Eigen::Index>(frame.size));
  for (std::size_t j = 0; j < frame.size; ++j) {
    DrawSource source = rng.draw(j);
    coefficients(static_cast<Eigen::Index>(j)) = atom.sample(source);
  }
  return frame.vectors * coefficients;
}

FrameDistanceReport be_frame_distance(const TightFrame& frame, const AtomDistribution& atom,
                                      std::size_t trials, const RngStream& rng) {
  if (trials < 100) throw std::invalid_argument("be_frame_distance: need at least 100 trials");
  if (atom.field() != frame.field) throw std::invalid_argument("be_frame_distance: atom and frame fields differ");
  const AtomDistribution gaussian = gaussian_for(frame.field);

  struct Draw {
    std::vector<double> s;
    std::vector<double> g;
  };
  const std::vector<Draw> draws = parallel_map(trials, default_worker_count(), [&](std::size_t t) {
    const RngStream stream = rng.child(t);
    ComplexVector g(static_cast<Eigen::Index>(frame.ambient));
    const RngStream gaussian_stream = stream.child(1);
    for (std::size_t i = 0; i < frame.ambient; ++i) {
      DrawSource source = gaussian_stream.draw(i);
      g(static_cast<Eigen::Index>(i)) = gaussian.sample(source);
    }
    return Draw{real_coordinates(frame_sample(frame, atom, stream), frame.field),
                real_coordinates(g, frame.field)};
  });

  std::vector<std::vector<double>> s_rows, g_rows;
  for (const auto& d : draws) {
    s_rows.push_back(d.s);
    g_rows.push_back(d.g);
  }
  const std::size_t dims = s_rows.front().size();

  FrameDistanceReport report;
  report.trials = trials;
  std::vector<std::vector<double>> axes;
  for (std::size_t c = 0; c < dims; ++c) {
    const std::vector<double> sc = column(s_rows, c);
    const std::vector<double> gc = column(g_rows, c);
    report.coordinate_ks.push_back(ks_distance(EmpiricalCDF(sc), EmpiricalCDF(gc)));
    axes.push_back(pooled_quantile_axis(sc, gc));
  }
  std::size_t pairs = 0;
  for (std::size_t p = 0; p < dims; ++p) {
    for (std::size_t q = p + 1; q < dims; ++q) {
      ++pairs;
      std::vector<std::vector<double>> sp, gp;
      for (std::size_t t = 0; t < trials; ++t) {
        sp.push_back({s_rows[t][p], s_rows[t][q]});
        gp.push_back({g_rows[t][p], g_rows[t][q]});
      }
      const std::vector<double> fs = joint_ecdf(sp, {axes[p], axes[q]});
      const std::vector<double> fg = joint_ecdf(gp, {axes[p], axes[q]});
      for (std::size_t k = 0; k < fs.size(); ++k) {
        report.pairwise_joint = std::max(report.pairwise_joint, std::abs(fs[k] - fg[k]));
      }
    }
  }
  report.statistic = std::max(report.pairwise_joint,
                              *std::max_element(report.coordinate_ks.begin(), report.coordinate_ks.end()));
  const double tests = static_cast<double>(dims + pairs);
  report.noise_band = ks_critical_value(0.01 / tests, trials, trials);
  return report;
}

ConcentrationReport projection_concentration(const AtomDistribution& atom, std::size_t n, std::size_t d,
                                             std::size_t trials, const RngStream& rng) {
  if (!atom.sup_bound()) throw std::invalid_argument("projection_concentration: atom must be bounded");
  if (d < 1 || d > n) throw std::invalid_argument("projection_concentration: need 1 <= d <= n");
  if (trials < 2) throw std::invalid_argument("projection_concentration: need at least 2 trials");

  DrawSource source = rng.sequential();
  const ComplexMatrix g = gaussian_matrix(n, d, atom.field(), source);
  const Eigen::HouseholderQR<ComplexMatrix> qr(g);
  const ComplexMatrix basis = qr.householderQ() * ComplexMatrix::Identity(g.rows(), g.cols());
  const ComplexMatrix basis_adjoint = basis.adjoint();

  const std::vector<double> lengths = parallel_map(trials, default_worker_count(), [&](std::size_t t) {
    const RngStream stream = rng.child(t);
    ComplexVector x(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
      DrawSource s = stream.draw(i);
      x(static_cast<Eigen::Index>(i)) = atom.sample(s);
    }
    return (basis_adjoint * x).norm();
  });

  ConcentrationReport report;
  report.n = n;
  report.d = d;
  report.trials = trials;
  const double root = std::sqrt(static_cast<double>(d));
  std::size_t tail = 0;
  double sum = 0.0, sum_sq = 0.0;
  for (double len : lengths) {
    if (std::abs(len - root) >= 0.5 * root) ++tail;
    const double sq = len * len;
    sum += sq;
    sum_sq += sq * sq;
  }
  const double count = static_cast<double>(trials);
  report.tail_frequency = static_cast<double>(tail) / count;
  report.mean_square = sum / count;
  const double variance = std::max(0.0, (sum_sq - count * report.mean_square * report.mean_square) / (count - 1.0));
  report.standard_error = std::sqrt(variance / count);
  report.mean_within_band =
      std::abs(report.mean_square - static_cast<double>(d)) <= 3.0 * report.standard_error + 1e-9 * static_cast<double>(d);
  report.median_mean_gap = hardedge::median_mean_gap(lengths);
  return report;
}

}  // namespace hardedge
