#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "hardedge/atoms.hpp"
#include "hardedge/ecdf.hpp"
#include "hardedge/matrix.hpp"
#include "hardedge/rng.hpp"

namespace hardedge {

// Column X_i of A is A.col(i); R_i is row i of A^{-1}. Public indices are
// one-based where they name X_i, R_i or d_i, matching the usual notation.

enum class SamplingMode { WithReplacement, WithoutReplacement };

struct SamplingEstimate {
  std::size_t s = 0;
  double estimate = 0.0;       // sqrt(n / s) sigma_1(B)
  double truth = 0.0;          // sigma_1(A^{-1})
  double frobenius_gap = 0.0;  // ||G*G - (n/s) B*B||_F with G = A^{-1}
  double row_fourth_moment = 0.0;  // sum_k |R_k|^4
  std::vector<std::size_t> rows;   // zero-based rows of A^{-1} that form B
};

/// Estimates sigma_1(A^{-1}) = 1 / sigma_n(A) from s sampled rows of A^{-1}.
/// With replacement: 1 <= s <= n. Without replacement: s <= sqrt(n), or s == n
/// (exhaustive).
SamplingEstimate sampling_estimator(const Matrix& a, std::size_t s, const RngStream& rng,
                                    SamplingMode mode = SamplingMode::WithReplacement);

struct SecondMomentCheck {
  double lhs = 0.0;  // E ||G*G - (n/s) B*B||_F^2 over index tuples with replacement
  double rhs = 0.0;  // (n/s) sum_k |R_k|^4
  double standard_error = 0.0;  // zero when exhaustive
  bool exhaustive = true;
  bool holds = true;
};

/// Rows R_k of `g` are sampled. Exhaustive over all n^s tuples when n <= 8 and
/// n^s <= 2^18; otherwise a Monte Carlo estimate from `rng`.
SecondMomentCheck sampling_second_moment_oracle(const Matrix& g, std::size_t s,
                                                const RngStream& rng = {});

/// Closed form (n^2 / s) sum_{i,j} V_ij of the same expectation, where V_ij is
/// the variance of conj(a_{ki}) a_{kj} over a uniform row k.
double sampling_second_moment_exact(const Matrix& g, std::size_t s);

struct ProjectionWitness {
  std::size_t s = 0;
  ComplexMatrix basis;      // n x s, orthonormal columns spanning V
  ComplexMatrix projected;  // s x s, columns pi(X_1)..pi(X_s)
  ComplexMatrix sampled;    // s x n, rows R_1..R_s
  double gram_residual = 0.0;       // ||BB* - M^{-1}M^{-*}||_F / ||BB*||_F
  double singular_residual = 0.0;   // max_j |sigma_j(B) sigma_{s-j+1}(M) - 1|
  double orthonormality_residual = 0.0;
  double complement_residual = 0.0; // max |<basis_k, X_i>| / |X_i| over i > s
  bool certified = false;
};

/// Projects the first s columns onto V = span(X_{s+1}..X_n)^perp.
/// The basis is the complement block of a Householder QR of the trailing
/// columns; with `randomize_with` it is rotated by a Haar-random unitary.
/// Throws RankDeficiencyError if the trailing columns are dependent and
/// SingularMatrixError if A is singular.
ProjectionWitness build_projection(const Matrix& a, std::size_t s,
                                   const std::optional<RngStream>& randomize_with = std::nullopt);

struct DistanceReport {
  std::vector<double> geometric;   // dist(X_i, span of the other columns)
  std::vector<double> algebraic;   // 1 / |R_i|
  double max_relative_gap = 0.0;
  bool agree = false;              // max_relative_gap <= 1e-8
};
DistanceReport distances_to_hyperplanes(const Matrix& a);

/// dist(X_i, span(X_j : j != i)) for one zero-based column.
double distance_to_hyperplane(const Matrix& a, std::size_t column);

struct CorrelationReport {
  double distance = 0.0;  // d_j
  double bound = 0.0;     // |pi(X_j)| / (1 + sum_{i<=L} |pi(X_i)| / d_i)
  bool holds = false;
};
/// One-based 1 <= L < j <= n.
CorrelationReport correlation_bound_check(const Matrix& a, std::size_t big_l, std::size_t j);

/// Largest coordinate magnitude over an orthonormal basis of V_{s,n}.
double normal_vector_max_coordinate(const Matrix& a, std::size_t s);

/// #{i : sigma_i(A) <= n^{1/2 - c}} for 0 < c < 1/2.
std::size_t count_small_singular_values(const Matrix& a, double c);

/// Empirical law of d_1 = dist(X_1, span(X_2..X_n)) over iid n x n matrices;
/// trial t uses rng.child(t).
EmpiricalCDF distance_distribution_experiment(const AtomDistribution& atom, std::size_t n,
                                              std::size_t trials, const RngStream& rng);

/// Prepends l = n - m orthonormal rows spanning the orthogonal complement of
/// the row space of the m x n matrix A. Throws RankDeficiencyError if A does
/// not have full row rank.
Matrix rectangular_reduce(const Matrix& a);

/// s sigma_s(M_{s,n})^2 for the projected matrix of build_projection.
double pipeline_sigma_statistic(const Matrix& a, std::size_t s);

}  // namespace hardedge
