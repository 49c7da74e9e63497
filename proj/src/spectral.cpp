#include "hardedge/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hardedge {

namespace {

constexpr int kMaxQrSweepsPerValue = 75;
constexpr double kInverseRcondFloor = 1e-12;

// Householder reduction of a tall (rows >= cols) matrix to real upper
// bidiagonal form. Reflectors are chosen so that every diagonal and
// superdiagonal entry is real, for real and complex scalars alike.
template <class Scalar>
void bidiagonalize(Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& mat,
                   std::vector<double>& diagonal, std::vector<double>& superdiagonal) {
  const Eigen::Index rows = mat.rows();
  const Eigen::Index cols = mat.cols();
  diagonal.assign(static_cast<std::size_t>(cols), 0.0);
  superdiagonal.assign(static_cast<std::size_t>(std::max<Eigen::Index>(cols - 1, 0)), 0.0);
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> workspace(std::max(rows, cols));

  for (Eigen::Index k = 0; k < cols; ++k) {
    const Eigen::Index remaining_rows = rows - k;
    const Eigen::Index remaining_cols = cols - k - 1;
    Scalar tau;
    double beta;

    mat.col(k).tail(remaining_rows).makeHouseholderInPlace(tau, beta);
    diagonal[static_cast<std::size_t>(k)] = beta;
    if (remaining_cols > 0) {
      mat.bottomRightCorner(remaining_rows, remaining_cols)
          .applyHouseholderOnTheLeft(mat.col(k).tail(remaining_rows - 1), tau, workspace.data());
    }
    if (k == cols - 1) break;

    mat.row(k).tail(remaining_cols).makeHouseholderInPlace(tau, beta);
    superdiagonal[static_cast<std::size_t>(k)] = beta;
    if (remaining_rows > 1) {
      mat.bottomRightCorner(remaining_rows - 1, remaining_cols)
          .applyHouseholderOnTheRight(mat.row(k).tail(remaining_cols - 1).adjoint(), tau,
                                      workspace.data());
    }
  }
}

template <class Storage>
std::vector<double> values_of(const Storage& input) {
  using Scalar = typename Storage::Scalar;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> work;
  if (input.rows() >= input.cols()) {
    work = input;
  } else {
    work = input.adjoint();
  }
  if (work.cols() == 0) return {};
  std::vector<double> diagonal;
  std::vector<double> superdiagonal;
  bidiagonalize(work, diagonal, superdiagonal);
  return bidiagonal_singular_values(std::move(diagonal), std::move(superdiagonal));
}

double inequality_tolerance(double lhs, double rhs, double scale) {
  return 1e-10 * (1.0 + std::abs(lhs) + std::abs(rhs) + scale);
}

void require_self_adjoint(const Matrix& m, const char* what) {
  if (!m.is_square()) throw std::invalid_argument(std::string(what) + ": matrix must be square");
  const double asym = m.visit([](const auto& x) { return (x - x.adjoint()).norm(); });
  const double size = m.visit([](const auto& x) { return x.norm(); });
  if (asym > 1e-12 * (1.0 + size)) {
    throw std::invalid_argument(std::string(what) + ": matrix must be self-adjoint");
  }
}

}  // namespace

std::vector<double> bidiagonal_singular_values(std::vector<double> w, std::vector<double> e) {
  const int n = static_cast<int>(w.size());
  if (n == 0) return {};
  if (static_cast<int>(e.size()) != n - 1) {
    throw std::invalid_argument("bidiagonal_singular_values: superdiagonal size mismatch");
  }
  // rv[i] couples w[i-1] and w[i]; rv[0] is always zero.
  std::vector<double> rv(static_cast<std::size_t>(n), 0.0);
  std::copy(e.begin(), e.end(), rv.begin() + 1);

  double anorm = 0.0;
  for (int i = 0; i < n; ++i) anorm = std::max(anorm, std::abs(w[i]) + std::abs(rv[i]));
  const double tol = std::numeric_limits<double>::epsilon() * anorm;

  for (int k = n - 1; k >= 0; --k) {
    for (int sweep = 0;; ++sweep) {
      // Find the top l of the unreduced block ending at k.
      int l = k;
      bool chase_zero_diagonal = true;
      for (; l >= 0; --l) {
        if (l == 0 || std::abs(rv[l]) <= tol) {
          chase_zero_diagonal = false;
          break;
        }
        if (std::abs(w[l - 1]) <= tol) break;
      }
      if (chase_zero_diagonal) {
        // w[l-1] is negligible: rotate rv[l] out of the block.
        double c = 0.0;
        double s = 1.0;
        for (int i = l; i <= k; ++i) {
          const double f = s * rv[i];
          rv[i] *= c;
          if (std::abs(f) <= tol) break;
          const double g = w[i];
          const double h = std::hypot(f, g);
          w[i] = h;
          c = g / h;
          s = -f / h;
        }
      }
      double z = w[k];
      if (l == k) {
        if (z < 0.0) w[k] = -z;
        break;
      }
      if (sweep >= kMaxQrSweepsPerValue) {
        throw ConvergenceError("singular_values: QR iteration did not converge");
      }

      // Wilkinson-type shift from the trailing 2x2 block.
      double x = w[l];
      double y = w[k - 1];
      double g = rv[k - 1];
      double h = rv[k];
      double f = ((y - z) * (y + z) + (g - h) * (g + h)) / (2.0 * h * y);
      g = std::hypot(f, 1.0);
      f = ((x - z) * (x + z) + h * ((y / (f + std::copysign(g, f))) - h)) / x;

      // Chase the bulge with Givens rotations.
      double c = 1.0;
      double s = 1.0;
      for (int j = l; j < k; ++j) {
        const int i = j + 1;
        g = rv[i];
        y = w[i];
        h = s * g;
        g = c * g;
        z = std::hypot(f, h);
        rv[j] = z;
        c = f / z;
        s = h / z;
        f = x * c + g * s;
        g = g * c - x * s;
        h = y * s;
        y *= c;
        z = std::hypot(f, h);
        w[j] = z;
        if (z != 0.0) {
          c = f / z;
          s = h / z;
        }
        f = c * g + s * y;
        x = c * y - s * g;
      }
      rv[l] = 0.0;
      rv[k] = f;
      w[k] = x;
    }
  }
  std::sort(w.begin(), w.end(), std::greater<>());
  return w;
}

SingularSpectrum singular_values(const Matrix& a) {
  SingularSpectrum spectrum;
  spectrum.rows = a.rows();
  spectrum.cols = a.cols();
  spectrum.values = a.visit([](const auto& m) { return values_of(m); });
  return spectrum;
}

std::vector<double> hard_edge_statistic(const SingularSpectrum& spectrum, std::size_t k) {
  if (spectrum.rows != spectrum.cols) {
    throw std::invalid_argument("hard_edge_statistic: matrix must be square");
  }
  const std::size_t n = spectrum.cols;
  if (k == 0 || k > n) throw std::invalid_argument("hard_edge_statistic: need 1 <= k <= n");
  std::vector<double> out(k);
  for (std::size_t i = 0; i < k; ++i) {
    const double sigma = spectrum.values[n - 1 - i];
    out[i] = static_cast<double>(n) * sigma * sigma;
  }
  return out;
}

std::vector<double> hard_edge_statistic(const Matrix& a, std::size_t k) {
  if (!a.is_square()) throw std::invalid_argument("hard_edge_statistic: matrix must be square");
  if (k == 0 || k > a.cols()) throw std::invalid_argument("hard_edge_statistic: need 1 <= k <= n");
  return hard_edge_statistic(singular_values(a), k);
}

Matrix invert(const Matrix& a) {
  if (!a.is_square()) throw std::invalid_argument("invert: matrix must be square");
  return a.visit([](const auto& m) {
    using Storage = std::decay_t<decltype(m)>;
    const Eigen::PartialPivLU<Storage> lu(m);
    if (!(lu.rcond() >= kInverseRcondFloor)) {
      throw SingularMatrixError("invert: matrix is singular to working precision");
    }
    Storage inverse = lu.inverse();
    const auto n = m.rows();
    const double residual = (m * inverse - Storage::Identity(n, n)).norm();
    if (!(residual <= 1e-8 * static_cast<double>(n))) {
      throw SingularMatrixError("invert: residual check failed");
    }
    return Matrix(std::move(inverse));
  });
}

std::vector<ComplexVector> inverse_rows(const Matrix& a) {
  const ComplexMatrix inverse = invert(a).as_complex();
  std::vector<ComplexVector> rows;
  rows.reserve(static_cast<std::size_t>(inverse.rows()));
  for (Eigen::Index i = 0; i < inverse.rows(); ++i) rows.emplace_back(inverse.row(i).transpose());
  return rows;
}

Norms norms(const Matrix& a) {
  const double frobenius = a.visit([](const auto& m) { return m.norm(); });
  const SingularSpectrum spectrum = singular_values(a);
  return {frobenius, spectrum.values.empty() ? 0.0 : spectrum.largest()};
}

Matrix hermitize(const Matrix& m) {
  if (!m.is_square()) throw std::invalid_argument("hermitize: matrix must be square");
  return m.visit([](const auto& x) {
    using Storage = std::decay_t<decltype(x)>;
    const auto n = x.rows();
    Storage w = Storage::Zero(2 * n, 2 * n);
    w.topRightCorner(n, n) = x;
    w.bottomLeftCorner(n, n) = x.adjoint();
    return Matrix(std::move(w));
  });
}

std::vector<double> hermitian_eigenvalues(const Matrix& m) {
  require_self_adjoint(m, "hermitian_eigenvalues");
  std::vector<double> values = m.visit([](const auto& x) {
    using Storage = std::decay_t<decltype(x)>;
    const Eigen::SelfAdjointEigenSolver<Storage> solver(x, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
      throw ConvergenceError("hermitian_eigenvalues: eigensolver did not converge");
    }
    const Eigen::VectorXd& ev = solver.eigenvalues();
    return std::vector<double>(ev.data(), ev.data() + ev.size());
  });
  std::sort(values.begin(), values.end(), std::greater<>());
  return values;
}

double condition_number(const SingularSpectrum& spectrum) {
  if (spectrum.rows != spectrum.cols) throw std::invalid_argument("condition_number: matrix must be square");
  if (!(spectrum.smallest() > 0.0)) throw SingularMatrixError("condition_number: singular matrix");
  return spectrum.largest() / spectrum.smallest();
}

double condition_number(const Matrix& a) {
  if (!a.is_square()) throw std::invalid_argument("condition_number: matrix must be square");
  return condition_number(singular_values(a));
}

InequalityReport check_hoffman_wielandt(const Matrix& m, const Matrix& m_prime) {
  if (m.rows() != m_prime.rows() || m.cols() != m_prime.cols()) {
    throw std::invalid_argument("check_hoffman_wielandt: dimension mismatch");
  }
  const std::vector<double> a = hermitian_eigenvalues(m);
  const std::vector<double> b = hermitian_eigenvalues(m_prime);
  InequalityReport report{"hoffman-wielandt"};
  for (std::size_t i = 0; i < a.size(); ++i) report.lhs += (a[i] - b[i]) * (a[i] - b[i]);
  const double diff = (m - m_prime).visit([](const auto& x) { return x.norm(); });
  report.rhs = diff * diff;
  const double scale = m.visit([](const auto& x) { return x.squaredNorm(); }) +
                       m_prime.visit([](const auto& x) { return x.squaredNorm(); });
  report.holds = report.lhs <= report.rhs + inequality_tolerance(report.lhs, report.rhs, scale);
  return report;
}

InequalityReport check_hoffman_wielandt_gram(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("check_hoffman_wielandt_gram: dimension mismatch");
  }
  const SingularSpectrum sa = singular_values(a);
  const SingularSpectrum sb = singular_values(b);
  InequalityReport report{"hoffman-wielandt-gram"};
  const std::size_t n = a.cols();
  for (std::size_t i = 1; i <= n; ++i) {
    const double d = sa.sigma(i) * sa.sigma(i) - sb.sigma(i) * sb.sigma(i);
    report.lhs += d * d;
  }
  const ComplexMatrix ca = a.as_complex();
  const ComplexMatrix cb = b.as_complex();
  report.rhs = (ca.adjoint() * ca - cb.adjoint() * cb).squaredNorm();
  const double scale = std::pow(ca.squaredNorm() + cb.squaredNorm(), 2);
  report.holds = report.lhs <= report.rhs + inequality_tolerance(report.lhs, report.rhs, scale);
  return report;
}

InequalityReport check_weyl(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("check_weyl: dimension mismatch");
  }
  const SingularSpectrum sa = singular_values(a);
  const SingularSpectrum sb = singular_values(b);
  InequalityReport report{"weyl"};
  for (std::size_t j = 0; j < sa.values.size(); ++j) {
    report.lhs = std::max(report.lhs, std::abs(sa.values[j] - sb.values[j]));
  }
  report.rhs = norms(a - b).op;
  const double scale = sa.largest() + sb.largest();
  report.holds = report.lhs <= report.rhs + inequality_tolerance(report.lhs, report.rhs, scale);
  return report;
}

InequalityReport check_interlacing(const Matrix& a, const std::vector<std::size_t>& row_subset) {
  if (row_subset.empty()) throw std::invalid_argument("check_interlacing: empty row subset");
  const Matrix sub = a.select_rows(row_subset);
  const SingularSpectrum full = singular_values(a);
  const SingularSpectrum part = singular_values(sub);
  const std::size_t m = a.rows();
  const std::size_t r = row_subset.size();
  const std::size_t n = a.cols();
  InequalityReport report{"cauchy-interlacing"};
  double least_slack = std::numeric_limits<double>::infinity();
  const double tol = 1e-10 * (1.0 + full.largest());
  auto consider = [&](double lhs, double rhs) {
    const double slack = rhs - lhs;
    if (slack < least_slack) {
      least_slack = slack;
      report.lhs = lhs;
      report.rhs = rhs;
    }
    if (lhs > rhs + tol) report.holds = false;
  };
  for (std::size_t j = 1; j <= std::min(r, n); ++j) {
    consider(part.sigma(j), full.sigma(j));
    consider(full.sigma(j + m - r), part.sigma(j));
  }
  return report;
}

}  // namespace hardedge
