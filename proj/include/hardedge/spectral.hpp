#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "hardedge/matrix.hpp"

namespace hardedge {

/// Singular values sigma_1 >= ... >= sigma_min(m,n) >= 0 of an m x n matrix.
struct SingularSpectrum {
  std::vector<double> values;
  std::size_t rows = 0;
  std::size_t cols = 0;

  double largest() const { return values.front(); }
  double smallest() const { return values.back(); }
  /// One-based sigma_j, zero past min(m, n).
  double sigma(std::size_t j) const { return j >= 1 && j <= values.size() ? values[j - 1] : 0.0; }
};

/// Values-only SVD: Householder bidiagonalization followed by the
/// Golub-Kahan implicit-shift QR iteration. Throws ConvergenceError if a
/// value fails to converge within the iteration cap.
SingularSpectrum singular_values(const Matrix& a);

/// Singular values of the real bidiagonal matrix with the given diagonal and
/// superdiagonal (superdiagonal.size() == diagonal.size() - 1), descending.
std::vector<double> bidiagonal_singular_values(std::vector<double> diagonal,
                                               std::vector<double> superdiagonal);

/// Scaled hard-edge statistic (n sigma_n^2, ..., n sigma_{n-k+1}^2) of a square
/// n x n matrix; nondecreasing.
std::vector<double> hard_edge_statistic(const Matrix& a, std::size_t k);
std::vector<double> hard_edge_statistic(const SingularSpectrum& spectrum, std::size_t k);

/// Inverse via LU with partial pivoting. Throws SingularMatrixError when the
/// LU reciprocal condition estimate falls below 1e-12 or when the residual
/// ||A A^{-1} - I||_F exceeds 1e-8 n.
Matrix invert(const Matrix& a);

/// Rows R_1..R_n of A^{-1}, promoted to complex vectors.
std::vector<ComplexVector> inverse_rows(const Matrix& a);

struct Norms {
  double frobenius;
  double op;
};
Norms norms(const Matrix& a);

/// W = [[0, M], [M*, 0]]; its eigenvalues are +-sigma_i(M).
Matrix hermitize(const Matrix& m);

/// Eigenvalues of a self-adjoint matrix, descending.
std::vector<double> hermitian_eigenvalues(const Matrix& m);

/// sigma_1 / sigma_n; throws SingularMatrixError if sigma_n == 0.
double condition_number(const Matrix& a);
double condition_number(const SingularSpectrum& spectrum);

/// Outcome of a numerical inequality check lhs <= rhs. For multi-constraint
/// checks lhs and rhs are the pair with the least slack.
struct InequalityReport {
  std::string name;
  bool holds = true;
  double lhs = 0.0;
  double rhs = 0.0;
};

/// sum_i (lambda_i(M) - lambda_i(M'))^2 <= ||M - M'||_F^2 for self-adjoint M, M'
/// with eigenvalues sorted in the same order.
InequalityReport check_hoffman_wielandt(const Matrix& m, const Matrix& m_prime);

/// Gram form: sum_i (sigma_i(A)^2 - sigma_i(B)^2)^2 <= ||A*A - B*B||_F^2.
InequalityReport check_hoffman_wielandt_gram(const Matrix& a, const Matrix& b);

/// max_j |sigma_j(A) - sigma_j(B)| <= ||A - B||_op.
InequalityReport check_weyl(const Matrix& a, const Matrix& b);

/// sigma_j(A) >= sigma_j(A') >= sigma_{j+m-r}(A) for A' the r rows of A
/// listed in `row_subset`, 1 <= j <= min(r, n).
InequalityReport check_interlacing(const Matrix& a, const std::vector<std::size_t>& row_subset);

}  // namespace hardedge
