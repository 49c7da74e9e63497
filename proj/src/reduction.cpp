#include "hardedge/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "hardedge/ensembles.hpp"
#include "hardedge/parallel.hpp"
#include "hardedge/spectral.hpp"

namespace hardedge {

namespace {

template <class Scalar>
using Dense = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

constexpr double kRankFloor = 1e-12;

// Orthonormal basis (n x (n - p)) of the complement of span(columns).
template <class Scalar>
Dense<Scalar> complement_basis(const Dense<Scalar>& columns, const char* what) {
  const Eigen::Index n = columns.rows();
  const Eigen::Index p = columns.cols();
  if (p == 0) return Dense<Scalar>::Identity(n, n);
  const Eigen::HouseholderQR<Dense<Scalar>> qr(columns);
  const double scale = columns.colwise().norm().maxCoeff();
  const auto& r = qr.matrixQR();
  for (Eigen::Index i = 0; i < p; ++i) {
    if (!(std::abs(r(i, i)) > kRankFloor * scale)) {
      throw RankDeficiencyError(std::string(what) + ": columns are linearly dependent");
    }
  }
  Dense<Scalar> q = qr.householderQ();
  return q.rightCols(n - p);
}

template <class Scalar>
Dense<Scalar> columns_except(const Dense<Scalar>& a, const std::vector<Eigen::Index>& drop) {
  Dense<Scalar> out(a.rows(), a.cols() - static_cast<Eigen::Index>(drop.size()));
  Eigen::Index k = 0;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    if (std::find(drop.begin(), drop.end(), j) == drop.end()) out.col(k++) = a.col(j);
  }
  return out;
}

template <class Scalar>
double hyperplane_distance(const Dense<Scalar>& a, Eigen::Index column) {
  const Eigen::Index n = a.rows();
  if (a.cols() == 1) return a.col(0).norm();
  const Dense<Scalar> others = columns_except(a, {column});
  const Eigen::HouseholderQR<Dense<Scalar>> qr(others);
  const Eigen::Matrix<Scalar, Eigen::Dynamic, 1> coords = qr.householderQ().adjoint() * a.col(column);
  return coords.tail(n - others.cols()).norm();
}

std::vector<double> sorted_values(const ComplexMatrix& m) { return singular_values(Matrix(m)).values; }

void require_square(const Matrix& a, const char* what) {
  if (!a.is_square()) throw std::invalid_argument(std::string(what) + ": matrix must be square");
}

// Haar-distributed unitary (orthogonal for real scalars) of size s.
template <class Scalar>
Dense<Scalar> haar_unitary(Eigen::Index s, const RngStream& rng) {
  DrawSource source = rng.sequential();
  Dense<Scalar> g(s, s);
  for (Eigen::Index i = 0; i < s; ++i) {
    for (Eigen::Index j = 0; j < s; ++j) {
      if constexpr (std::is_same_v<Scalar, double>) {
        g(i, j) = source.normal();
      } else {
        const double re = source.normal();
        g(i, j) = Complex(re, source.normal());
      }
    }
  }
  const Eigen::HouseholderQR<Dense<Scalar>> qr(g);
  Dense<Scalar> q = qr.householderQ();
  for (Eigen::Index j = 0; j < s; ++j) {
    const Scalar d = qr.matrixQR()(j, j);
    const double mag = std::abs(d);
    if (mag > 0.0) q.col(j) *= d / mag;
  }
  return q;
}

}  // namespace

SamplingEstimate sampling_estimator(const Matrix& a, std::size_t s, const RngStream& rng,
                                    SamplingMode mode) {
  require_square(a, "sampling_estimator");
  const std::size_t n = a.rows();
  if (s < 1 || s > n) throw std::invalid_argument("sampling_estimator: need 1 <= s <= n");
  if (mode == SamplingMode::WithoutReplacement && s != n &&
      static_cast<double>(s) > std::sqrt(static_cast<double>(n))) {
    throw std::invalid_argument("sampling_estimator: without replacement requires s <= sqrt(n) or s == n");
  }
  const ComplexMatrix g = invert(a).as_complex();

  SamplingEstimate result;
  result.s = s;
  DrawSource source = rng.sequential();
  if (mode == SamplingMode::WithReplacement) {
    for (std::size_t l = 0; l < s; ++l) result.rows.push_back(source.below(n));
  } else {
    std::vector<std::size_t> pool(n);
    std::iota(pool.begin(), pool.end(), 0);
    for (std::size_t l = 0; l < s; ++l) {
      const std::size_t pick = l + source.below(n - l);
      std::swap(pool[l], pool[pick]);
      result.rows.push_back(pool[l]);
    }
  }

  ComplexMatrix b(static_cast<Eigen::Index>(s), g.cols());
  for (std::size_t l = 0; l < s; ++l) b.row(static_cast<Eigen::Index>(l)) = g.row(static_cast<Eigen::Index>(result.rows[l]));
  const double ratio = static_cast<double>(n) / static_cast<double>(s);
  result.estimate = std::sqrt(ratio) * sorted_values(b).front();
  result.truth = sorted_values(g).front();
  result.frobenius_gap = (g.adjoint() * g - ratio * b.adjoint() * b).norm();
  for (Eigen::Index k = 0; k < g.rows(); ++k) result.row_fourth_moment += std::pow(g.row(k).squaredNorm(), 2);
  return result;
}

SecondMomentCheck sampling_second_moment_oracle(const Matrix& g_in, std::size_t s, const RngStream& rng) {
  const ComplexMatrix g = g_in.as_complex();
  const auto n = static_cast<std::size_t>(g.rows());
  if (s < 1 || s > n) throw std::invalid_argument("sampling_second_moment_oracle: need 1 <= s <= n");
  const double ratio = static_cast<double>(n) / static_cast<double>(s);
  const ComplexMatrix gram = g.adjoint() * g;
  std::vector<ComplexMatrix> outer(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto row = g.row(static_cast<Eigen::Index>(k));
    outer[k] = row.adjoint() * row;
  }

  SecondMomentCheck check;
  for (std::size_t k = 0; k < n; ++k) check.rhs += std::pow(g.row(static_cast<Eigen::Index>(k)).squaredNorm(), 2);
  check.rhs *= ratio;

  double tuples = 1.0;
  for (std::size_t l = 0; l < s; ++l) tuples *= static_cast<double>(n);
  check.exhaustive = n <= 8 && tuples <= 262144.0;

  if (check.exhaustive) {
    // Depth-first over all index tuples (k_1, ..., k_s) with running sums.
    std::vector<ComplexMatrix> partial(s + 1, ComplexMatrix::Zero(g.cols(), g.cols()));
    double total = 0.0;
    auto descend = [&](auto&& self, std::size_t depth) -> void {
      if (depth == s) {
        total += (gram - ratio * partial[s]).squaredNorm();
        return;
      }
      for (std::size_t k = 0; k < n; ++k) {
        partial[depth + 1] = partial[depth] + outer[k];
        self(self, depth + 1);
      }
    };
    descend(descend, 0);
    check.lhs = total / tuples;
    check.holds = check.lhs <= check.rhs * (1.0 + 1e-10) + 1e-12;
  } else {
    constexpr std::size_t kSamples = 20000;
    DrawSource source = rng.sequential();
    double mean_value = 0.0;
    double m2 = 0.0;
    for (std::size_t t = 0; t < kSamples; ++t) {
      ComplexMatrix sum = ComplexMatrix::Zero(g.cols(), g.cols());
      for (std::size_t l = 0; l < s; ++l) sum += outer[source.below(n)];
      const double x = (gram - ratio * sum).squaredNorm();
      const double delta = x - mean_value;
      mean_value += delta / static_cast<double>(t + 1);
      m2 += delta * (x - mean_value);
    }
    check.lhs = mean_value;
    check.standard_error = std::sqrt(m2 / static_cast<double>(kSamples - 1) / static_cast<double>(kSamples));
    check.holds = check.lhs - 3.0 * check.standard_error <= check.rhs;
  }
  return check;
}

double sampling_second_moment_exact(const Matrix& g_in, std::size_t s) {
  const ComplexMatrix g = g_in.as_complex();
  const double n = static_cast<double>(g.rows());
  if (s < 1 || static_cast<double>(s) > n) throw std::invalid_argument("sampling_second_moment_exact: need 1 <= s <= n");
  const RealMatrix moduli = g.cwiseAbs2();
  // (1/n) sum_k |a_ki|^2 |a_kj|^2 and (1/n) sum_k conj(a_ki) a_kj.
  const RealMatrix fourth = moduli.transpose() * moduli / n;
  const ComplexMatrix mean_product = g.adjoint() * g / n;
  const double variance_sum = fourth.sum() - mean_product.cwiseAbs2().sum();
  return n * n / static_cast<double>(s) * variance_sum;
}

ProjectionWitness build_projection(const Matrix& a, std::size_t s,
                                   const std::optional<RngStream>& randomize_with) {
  require_square(a, "build_projection");
  const std::size_t n = a.rows();
  if (s < 1 || s > n) throw std::invalid_argument("build_projection: need 1 <= s <= n");
  const auto si = static_cast<Eigen::Index>(s);
  const auto ni = static_cast<Eigen::Index>(n);

  ProjectionWitness w;
  w.s = s;
  w.basis = a.visit([&](const auto& m) -> ComplexMatrix {
    using Scalar = typename std::decay_t<decltype(m)>::Scalar;
    Dense<Scalar> basis = complement_basis<Scalar>(m.rightCols(ni - si), "build_projection");
    if (randomize_with) basis = basis * haar_unitary<Scalar>(si, *randomize_with);
    return basis.template cast<Complex>();
  });
  const ComplexMatrix x = a.as_complex();
  w.projected = w.basis.adjoint() * x.leftCols(si);
  w.sampled = invert(a).as_complex().topRows(si);

  const ComplexMatrix m_inverse = invert(Matrix(w.projected)).as_complex();
  const ComplexMatrix bb = w.sampled * w.sampled.adjoint();
  w.gram_residual = (bb - m_inverse * m_inverse.adjoint()).norm() / std::max(bb.norm(), 1e-300);

  const std::vector<double> sigma_b = sorted_values(w.sampled);
  const std::vector<double> sigma_m = sorted_values(w.projected);
  for (std::size_t j = 0; j < s; ++j) {
    w.singular_residual = std::max(w.singular_residual, std::abs(sigma_b[j] * sigma_m[s - 1 - j] - 1.0));
  }
  w.orthonormality_residual = (w.basis.adjoint() * w.basis - ComplexMatrix::Identity(si, si)).norm();
  for (Eigen::Index i = si; i < ni; ++i) {
    const double len = x.col(i).norm();
    const double leak = (w.basis.adjoint() * x.col(i)).cwiseAbs().maxCoeff();
    w.complement_residual = std::max(w.complement_residual, len > 0.0 ? leak / len : leak);
  }
  w.certified = w.gram_residual <= 1e-8 * static_cast<double>(s) && w.singular_residual <= 1e-8 &&
                w.orthonormality_residual <= 1e-10 && w.complement_residual <= 1e-8;
  return w;
}

double pipeline_sigma_statistic(const Matrix& a, std::size_t s) {
  require_square(a, "pipeline_sigma_statistic");
  const std::size_t n = a.rows();
  if (s < 1 || s > n) throw std::invalid_argument("pipeline_sigma_statistic: need 1 <= s <= n");
  return a.visit([&](const auto& m) {
    using Scalar = typename std::decay_t<decltype(m)>::Scalar;
    const auto si = static_cast<Eigen::Index>(s);
    const Dense<Scalar> basis = complement_basis<Scalar>(m.rightCols(m.cols() - si), "pipeline_sigma_statistic");
    const Dense<Scalar> projected = basis.adjoint() * m.leftCols(si);
    const double sigma_s = singular_values(Matrix(projected)).smallest();
    return static_cast<double>(s) * sigma_s * sigma_s;
  });
}

double distance_to_hyperplane(const Matrix& a, std::size_t column) {
  require_square(a, "distance_to_hyperplane");
  if (column >= a.cols()) throw std::out_of_range("distance_to_hyperplane: column out of range");
  return a.visit([&](const auto& m) { return hyperplane_distance(m, static_cast<Eigen::Index>(column)); });
}

DistanceReport distances_to_hyperplanes(const Matrix& a) {
  require_square(a, "distances_to_hyperplanes");
  DistanceReport report;
  const std::vector<ComplexVector> rows = inverse_rows(a);
  for (std::size_t i = 0; i < a.cols(); ++i) {
    const double geometric = distance_to_hyperplane(a, i);
    const double algebraic = 1.0 / rows[i].norm();
    report.geometric.push_back(geometric);
    report.algebraic.push_back(algebraic);
    report.max_relative_gap = std::max(report.max_relative_gap, std::abs(geometric * rows[i].norm() - 1.0));
  }
  report.agree = report.max_relative_gap <= 1e-8;
  return report;
}

CorrelationReport correlation_bound_check(const Matrix& a, std::size_t big_l, std::size_t j) {
  require_square(a, "correlation_bound_check");
  const std::size_t n = a.cols();
  if (!(big_l >= 1 && big_l < j && j <= n)) {
    throw std::invalid_argument("correlation_bound_check: need 1 <= L < j <= n");
  }
  const ComplexMatrix x = a.as_complex();
  // Drop X_1..X_L and X_j; the rest span the complement of V_{L,j}.
  std::vector<Eigen::Index> drop;
  for (std::size_t i = 0; i < big_l; ++i) drop.push_back(static_cast<Eigen::Index>(i));
  drop.push_back(static_cast<Eigen::Index>(j - 1));
  const ComplexMatrix spanning = columns_except<Complex>(x, drop);
  const ComplexMatrix basis = complement_basis<Complex>(spanning, "correlation_bound_check");

  auto projected_length = [&](std::size_t one_based) {
    return (basis.adjoint() * x.col(static_cast<Eigen::Index>(one_based - 1))).norm();
  };
  double denominator = 1.0;
  for (std::size_t i = 1; i <= big_l; ++i) {
    const double d_i = hyperplane_distance<Complex>(x, static_cast<Eigen::Index>(i - 1));
    if (!(d_i > 0.0)) throw SingularMatrixError("correlation_bound_check: singular matrix");
    denominator += projected_length(i) / d_i;
  }
  CorrelationReport report;
  report.distance = hyperplane_distance<Complex>(x, static_cast<Eigen::Index>(j - 1));
  report.bound = projected_length(j) / denominator;
  report.holds = report.distance >= report.bound * (1.0 - 1e-10) - 1e-14;
  return report;
}

double normal_vector_max_coordinate(const Matrix& a, std::size_t s) {
  require_square(a, "normal_vector_max_coordinate");
  const std::size_t n = a.cols();
  if (s < 1 || s > n) throw std::invalid_argument("normal_vector_max_coordinate: need 1 <= s <= n");
  return a.visit([&](const auto& m) {
    using Scalar = typename std::decay_t<decltype(m)>::Scalar;
    const Dense<Scalar> basis = complement_basis<Scalar>(
        m.rightCols(m.cols() - static_cast<Eigen::Index>(s)), "normal_vector_max_coordinate");
    return basis.cwiseAbs().maxCoeff();
  });
}

std::size_t count_small_singular_values(const Matrix& a, double c) {
  require_square(a, "count_small_singular_values");
  if (!(c > 0.0 && c < 0.5)) throw std::invalid_argument("count_small_singular_values: need 0 < c < 1/2");
  const double threshold = std::pow(static_cast<double>(a.cols()), 0.5 - c);
  const SingularSpectrum spectrum = singular_values(a);
  return static_cast<std::size_t>(std::count_if(spectrum.values.begin(), spectrum.values.end(),
                                                [&](double sigma) { return sigma <= threshold; }));
}

EmpiricalCDF distance_distribution_experiment(const AtomDistribution& atom, std::size_t n,
                                              std::size_t trials, const RngStream& rng) {
  if (n < 1 || trials < 1) throw std::invalid_argument("distance_distribution_experiment: need n, trials >= 1");
  const EnsembleSpec spec = square_ensemble(n, atom);
  std::vector<double> samples = parallel_map(trials, default_worker_count(), [&](std::size_t t) {
    return distance_to_hyperplane(sample_matrix(spec, rng.child(t)).matrix, 0);
  });
  return EmpiricalCDF(std::move(samples));
}

Matrix rectangular_reduce(const Matrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  if (m > n) throw std::invalid_argument("rectangular_reduce: need m <= n");
  if (m == n) return a;
  return a.visit([&](const auto& x) {
    using Scalar = typename std::decay_t<decltype(x)>::Scalar;
    const auto mi = static_cast<Eigen::Index>(m);
    const auto ni = static_cast<Eigen::Index>(n);
    // Null space of A = complement of range(A*); its adjoint rows are orthogonal to A's rows.
    const Dense<Scalar> complement = complement_basis<Scalar>(x.adjoint(), "rectangular_reduce");
    Dense<Scalar> out(ni, ni);
    out.topRows(ni - mi) = complement.adjoint();
    out.bottomRows(mi) = x;
    const Dense<Scalar> dummy = out.topRows(ni - mi);
    const double unit = (dummy * dummy.adjoint() - Dense<Scalar>::Identity(ni - mi, ni - mi)).norm();
    const double scale = std::max(1.0, x.norm());
    const double cross = (dummy * x.adjoint()).norm() / scale;
    if (unit > 1e-8 || cross > 1e-8) throw std::logic_error("rectangular_reduce: complement check failed");
    return Matrix(std::move(out));
  });
}

}  // namespace hardedge
